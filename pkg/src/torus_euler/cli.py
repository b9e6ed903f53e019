"""Command-line interface: lattice reports, censuses, simulations, verification.

Exit codes: 0 success, 2 configuration error, 3 numerical failure,
4 verification failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import __version__
from .census import linf_datum, orbit_census
from .eigenstate import orbit_invariant, same_orbit, synthesize_eigenstate
from .errors import NumericalBlowup, TorusEulerError
from .euler import run, stability_experiment
from .io import parse_coeffs, write_torf
from .lattice import LatticeBasis, classify_eigenspace, dual_basis, preset_basis, shortest_vectors
from .manifest import ExperimentManifest, ManifestError
from .verify import run_battery

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_VERIFY = 4


def _add_lattice_args(parser: argparse.ArgumentParser):
    parser.add_argument("--preset", help="square, hexagonal, or rectangular:<h>")
    parser.add_argument("--xi", nargs=2, type=float, metavar=("X1", "X2"),
                        help="first lattice generator")
    parser.add_argument("--eta", nargs=2, type=float, metavar=("E1", "E2"),
                        help="second lattice generator")


def _basis_from_args(args) -> LatticeBasis:
    if args.preset and (args.xi or args.eta):
        raise ManifestError("give either --preset or --xi/--eta, not both")
    if args.preset:
        return preset_basis(args.preset)
    if args.xi is None or args.eta is None:
        raise ManifestError("a lattice is required: --preset or both --xi and --eta")
    return LatticeBasis(tuple(args.xi), tuple(args.eta))


def _fmt_vec(v) -> str:
    return f"({v[0]:+.12g}, {v[1]:+.12g})"


def cmd_lattice_info(args) -> int:
    basis = _basis_from_args(args)
    db = dual_basis(basis)
    sv = shortest_vectors(basis)
    info = classify_eigenspace(basis)
    print(f"xi        = {_fmt_vec(basis.xi)}")
    print(f"eta       = {_fmt_vec(basis.eta)}")
    print(f"area      = {basis.area:.12g}")
    print(f"xi*       = {_fmt_vec(db.xi_star)}")
    print(f"eta*      = {_fmt_vec(db.eta_star)}")
    print(f"rho       = {sv.rho:.12g}")
    print(f"lambda1   = {info.lambda1:.12g}")
    print(f"dim E1    = {info.dim}")
    for vec, co in zip(sv.vectors, sv.coords):
        print(f"shortest  = {_fmt_vec(vec)}  coords ({co[0]}, {co[1]})")
    return EXIT_OK


def cmd_eigenspace(args) -> int:
    basis = _basis_from_args(args)
    info = classify_eigenspace(basis)
    print(f"dim E1  = {info.dim}")
    print(f"lambda1 = {info.lambda1:.12g}")
    for i, (k, co) in enumerate(zip(info.k, info.k_coords), start=1):
        print(f"k{i} = {_fmt_vec(k)}  coords ({co[0]}, {co[1]})"
              f"  modes cos(2pi k{i}.x), sin(2pi k{i}.x)")
    if info.dim == 6:
        print("relation: k3 = k1 + k2")
    return EXIT_OK


def cmd_census(args) -> int:
    basis = _basis_from_args(args)
    info = classify_eigenspace(basis)
    reference = parse_coeffs(args.coeffs, info)
    out = orbit_census(reference)
    print(f"# census dim={out.dim} count={out.count} bound={ {2: 1, 4: 2, 6: 12}[out.dim] }")
    if out.dim == 4:
        print(f"# sup-norm cross-check: reference A1+A2 = {linf_datum(reference)!r}")
    for i, rep in enumerate(out.representatives):
        inv = orbit_invariant(rep)
        phase = inv.phase if inv.phase is not None else complex(0.0)
        member = same_orbit(reference, rep)
        print(
            f"rep={i} amps={','.join(repr(a) for a in rep.amps)} "
            f"phases={','.join(repr(p) for p in rep.phases)} "
            f"invariant={phase.real!r},{phase.imag!r} "
            f"reference_orbit={'true' if member else 'false'}"
        )
    return EXIT_OK


def cmd_simulate(args) -> int:
    man = ExperimentManifest.from_file(args.manifest)
    outdir = Path(args.output or man.output_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    config = man.solver_config()
    reference = man.reference_coeffs()
    omega0 = synthesize_eigenstate(reference, config.grid)
    snapshots, diag = run(config, omega0, target=reference, p_norm=man.p_norm,
                          meta={"manifest": Path(args.manifest).name})
    for t, field in snapshots:
        write_torf(field, outdir / f"snapshot_t{t:g}.torf")
    csv_path = outdir / "diagnostics.csv"
    with open(csv_path, "w") as fh:
        diag.to_csv(fh)
    print(f"wrote {csv_path} ({len(diag)} rows) and {len(snapshots)} snapshots")
    return EXIT_OK


def _stability_job(man_text: str, eps: float, seed: int, outdir: str) -> str:
    man = ExperimentManifest.from_text(man_text)
    config = man.solver_config()
    reference = man.reference_coeffs()
    diag = stability_experiment(man.basis(), reference, eps, seed, man.p_norm, config)
    path = Path(outdir) / f"stability_eps{eps:g}_seed{seed}.csv"
    with open(path, "w") as fh:
        diag.to_csv(fh)
    return str(path)


def _worker_cap(n_jobs: int) -> int:
    env = os.environ.get("TORUS_EULER_THREADS")
    if env:
        try:
            cap = int(env)
        except ValueError:
            raise ManifestError(f"TORUS_EULER_THREADS must be an integer, got {env!r}")
        if cap < 1:
            raise ManifestError("TORUS_EULER_THREADS must be >= 1")
    else:
        cap = os.cpu_count() or 1
    return max(1, min(cap, n_jobs))


def cmd_stability(args) -> int:
    if args.manifest:
        man = ExperimentManifest.from_file(args.manifest)
    else:
        if not args.coeffs:
            raise ManifestError("--coeffs is required without a manifest")
        if not args.preset and (args.xi is None or args.eta is None):
            raise ManifestError("a lattice is required: --preset or both --xi and --eta")
        man = ExperimentManifest(
            preset=args.preset,
            xi=None if args.preset else tuple(args.xi),
            eta=None if args.preset else tuple(args.eta),
            n1=args.resolution, n2=args.resolution,
            dt=args.dt, t_end=args.t_end,
            reference=tuple(float(v) for v in args.coeffs.split()),
            p_norm=args.p_norm,
            output_dir=args.output or "out",
        )
        man.reference_coeffs()  # validate against the lattice now
    epsilons = tuple(args.eps) if args.eps else man.epsilons
    seeds = tuple(args.seed) if args.seed else man.seeds
    if not epsilons or not seeds:
        raise ManifestError("need at least one epsilon and one seed")
    outdir = Path(args.output or man.output_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    jobs = [(eps, seed) for eps in epsilons for seed in seeds]
    man_text = man.to_text()
    written = []
    workers = _worker_cap(len(jobs))
    if workers == 1 or len(jobs) == 1:
        for eps, seed in jobs:
            written.append(_stability_job(man_text, eps, seed, str(outdir)))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_stability_job, man_text, eps, seed, str(outdir))
                       for eps, seed in jobs]
            written = [f.result() for f in futures]
    for path in written:
        print(f"wrote {path}")
    return EXIT_OK


def cmd_verify(args) -> int:
    ok = run_battery(full=args.full)
    if ok:
        print("verification passed")
        return EXIT_OK
    print("verification FAILED", file=sys.stderr)
    return EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="torus-euler",
        description="Spectral tools and a 2D Euler solver on flat tori",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lattice-info", help="dual basis, shortest vectors, first eigenvalue")
    _add_lattice_args(p)
    p.set_defaults(func=cmd_lattice_info)

    p = sub.add_parser("eigenspace", help="first-eigenspace dimension and mode basis")
    _add_lattice_args(p)
    p.set_defaults(func=cmd_eigenspace)

    p = sub.add_parser("census", help="translation orbits sharing all moment invariants")
    _add_lattice_args(p)
    p.add_argument("--coeffs", required=True,
                   help="reference state: 'A1 alpha1 [A2 alpha2 [A3 alpha3]]'")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("simulate", help="run a manifest and write diagnostics/snapshots")
    p.add_argument("--manifest", required=True)
    p.add_argument("--output", help="override the manifest output directory")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("stability", help="perturbation experiments around an eigenstate")
    _add_lattice_args(p)
    p.add_argument("--manifest")
    p.add_argument("--coeffs", help="reference state (without a manifest)")
    p.add_argument("--eps", type=float, action="append",
                   help="perturbation size; repeatable")
    p.add_argument("--seed", type=int, action="append", help="random seed; repeatable")
    p.add_argument("--resolution", type=int, default=128)
    p.add_argument("--dt", type=float, default=1e-2)
    p.add_argument("--t-end", type=float, default=20.0)
    p.add_argument("--p-norm", type=float, default=2.0)
    p.add_argument("--output", help="output directory")
    p.set_defaults(func=cmd_stability)

    p = sub.add_parser("verify", help="run the verification battery")
    p.add_argument("--full", action="store_true",
                   help="include the solver-scale checks (minutes)")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ManifestError, ValueError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalBlowup as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except TorusEulerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
