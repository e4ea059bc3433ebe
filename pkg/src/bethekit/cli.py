"""Command-line check suites over JSON run configurations.

Subcommands: verify (algebraic identities), decompose (vector formulas
against the formal vector), solve (Bethe roots with certification and
spectrum matching), spectrum (dense sector eigenvalues).  Reports are
JSON with sorted keys and no timing payload, so an exact-mode run is
reproducible byte for byte; wall times appear only in the table view.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time

import numpy as np
from gmpy2 import mpq

from . import __version__
from .bethe import solve_bethe, transfer_matrix
from .chain import (
    ChainSpec,
    commutation_residuals,
    monodromy,
    pseudovacuum,
    rtt_residual,
    vacuum_eigenvalues,
)
from .decomposition import Split, all_splits, decomposition_report
from .errors import BetheKitError, ConfigInvalid, UnmatchedCertificate
from .linalg import max_abs
from .oracle import DIMENSION_CAP, dense_spectrum, match_bethe_to_spectrum
from .rmatrix import yang_baxter_residual
from .sampling import distinct_complexes, distinct_rationals
from .scalars import EXACT, FLOAT, Tolerance, coerce

SCHEMA_VERSION = 1
SUITES = ("rmatrix", "rtt", "commutation", "vacuum", "transfer")


def jsonify(x):
    """Render backend values losslessly for the report."""
    if x is None or isinstance(x, (bool, int, str)):
        return x
    if type(x) is mpq:
        return str(x)
    if isinstance(x, (complex, np.complexfloating)):
        z = complex(x)
        return [z.real, z.imag]
    if isinstance(x, (float, np.floating)):
        return float(x)
    if isinstance(x, (list, tuple)):
        return [jsonify(v) for v in x]
    if isinstance(x, dict):
        return {str(k): jsonify(v) for k, v in x.items()}
    return str(x)


def _parse_scalar(x, mode, where):
    try:
        if isinstance(x, list):
            if mode == EXACT:
                raise ConfigInvalid(f"{where}: complex pairs need float mode")
            if len(x) != 2:
                raise ConfigInvalid(f"{where}: complex pair needs two entries")
            return complex(float(x[0]), float(x[1]))
        if isinstance(x, float) and mode == EXACT:
            raise ConfigInvalid(f"{where}: float literal in exact mode, use a string like \"1/2\"")
        return coerce(x, mode)
    except ConfigInvalid:
        raise
    except Exception as exc:
        raise ConfigInvalid(f"{where}: {exc}") from exc


class RunConfig:
    """Validated run configuration shared by all subcommands."""

    KEYS = {
        "model", "n_sites", "xi", "eta", "mode", "seed", "samples",
        "tolerance", "suites", "m_values", "splits", "include_homogeneous",
        "guesses", "probe", "certificate_tolerance", "match_tolerance",
    }

    def __init__(self, raw):
        if not isinstance(raw, dict):
            raise ConfigInvalid("configuration must be a JSON object")
        unknown = set(raw) - self.KEYS
        if unknown:
            raise ConfigInvalid(f"unknown keys: {sorted(unknown)}")
        model = raw.get("model")
        if model not in ("xxx", "xxz"):
            raise ConfigInvalid("model must be \"xxx\" or \"xxz\"")
        self.model = model
        n = raw.get("n_sites")
        if not isinstance(n, int) or n < 1:
            raise ConfigInvalid("n_sites must be a positive integer")
        self.n_sites = n
        mode = raw.get("mode", EXACT if model == "xxx" else FLOAT)
        if mode not in (EXACT, FLOAT):
            raise ConfigInvalid("mode must be \"exact\" or \"float\"")
        if model == "xxz" and mode == EXACT:
            raise ConfigInvalid("xxz needs float mode")
        self.mode = mode
        if model == "xxz":
            if "eta" not in raw:
                raise ConfigInvalid("xxz needs an eta value")
            self.eta = _parse_scalar(raw["eta"], FLOAT, "eta")
        else:
            if "eta" in raw:
                raise ConfigInvalid("xxx takes no eta")
            self.eta = None
        # xi as a list gives one value per site (complex values written as
        # [re, im] pairs); a bare scalar makes the chain homogeneous.
        xi = raw.get("xi", 0)
        if isinstance(xi, list):
            self.xi = tuple(_parse_scalar(x, self.mode, "xi") for x in xi)
            if len(self.xi) != n:
                raise ConfigInvalid(f"xi list needs {n} entries")
        else:
            self.xi = _parse_scalar(xi, self.mode, "xi")
        seed = raw.get("seed", 0)
        if not isinstance(seed, int) or seed < 0:
            raise ConfigInvalid("seed must be a nonnegative integer")
        self.seed = seed
        samples = raw.get("samples", 12)
        if not isinstance(samples, int) or samples < 1:
            raise ConfigInvalid("samples must be a positive integer")
        self.samples = samples
        tol = raw.get("tolerance", {})
        if not isinstance(tol, dict) or set(tol) - {"absolute", "relative"}:
            raise ConfigInvalid("tolerance takes absolute and relative numbers")
        try:
            self.tolerance = Tolerance(
                absolute=float(tol.get("absolute", 1e-10)),
                relative=float(tol.get("relative", 1e-10)),
            )
        except ValueError as exc:
            raise ConfigInvalid(str(exc)) from exc
        suites = raw.get("suites", list(SUITES))
        if not isinstance(suites, list) or not suites or set(suites) - set(SUITES):
            raise ConfigInvalid(f"suites must be a nonempty subset of {list(SUITES)}")
        self.suites = [s for s in SUITES if s in suites]
        m_values = raw.get("m_values", [m for m in (1, 2) if m <= n])
        if (
            not isinstance(m_values, list)
            or not all(isinstance(m, int) and 0 <= m <= n for m in m_values)
        ):
            raise ConfigInvalid(f"m_values must be integers in 0..{n}")
        self.m_values = m_values
        splits = raw.get("splits")
        if splits is None:
            self.splits = None
        else:
            if not isinstance(splits, list):
                raise ConfigInvalid("splits must be a list of cut lists")
            parsed = []
            for cuts in splits:
                if not isinstance(cuts, list):
                    raise ConfigInvalid("each split is a list of cut positions")
                try:
                    parsed.append(Split(n, tuple(cuts)))
                except BetheKitError as exc:
                    raise ConfigInvalid(f"bad split {cuts}: {exc}") from exc
            self.splits = parsed
        self.include_homogeneous = raw.get("include_homogeneous")
        if self.include_homogeneous is not None and not isinstance(
            self.include_homogeneous, bool
        ):
            raise ConfigInvalid("include_homogeneous must be a boolean")
        guesses = raw.get("guesses", 40)
        if not isinstance(guesses, int) or guesses < 1:
            raise ConfigInvalid("guesses must be a positive integer")
        self.guesses = guesses
        self.probe = (
            _parse_scalar(raw["probe"], FLOAT, "probe") if "probe" in raw else None
        )
        self.certificate_tolerance = float(raw.get("certificate_tolerance", 1e-10))
        self.match_tolerance = float(raw.get("match_tolerance", 1e-9))

    def chain(self):
        kernel_xi = self.xi
        if self.model == "xxx":
            return ChainSpec.xxx(self.n_sites, kernel_xi, self.mode)
        return ChainSpec.xxz(self.n_sites, self.eta, kernel_xi)

    def echo(self):
        spec = self.chain()
        out = {
            "model": self.model,
            "n_sites": self.n_sites,
            "mode": self.mode,
            "xi": jsonify(list(spec.xi)),
            "seed": self.seed,
            "samples": self.samples,
            "tolerance": {
                "absolute": self.tolerance.absolute,
                "relative": self.tolerance.relative,
            },
        }
        if self.eta is not None:
            out["eta"] = jsonify(self.eta)
        return out


def load_config(path):
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigInvalid(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigInvalid(f"{path} is not valid JSON: {exc}") from exc
    return RunConfig(raw)


class Recorder:
    """Accumulates check records plus table-only wall times."""

    def __init__(self, mode, tolerance):
        self.mode = mode
        self.tolerance = tolerance
        self.records = []
        self.seconds = {}

    def passes(self, residual):
        if residual is None:
            return False
        if self.mode == EXACT and type(residual) is mpq:
            return residual == 0
        return self.tolerance.ok(float(abs(residual)))

    def add(self, name, inputs, residual, ok=None, detail=None, seconds=0.0):
        rec = {
            "name": name,
            "inputs": jsonify(inputs),
            "residual": jsonify(residual),
            "pass": self.passes(residual) if ok is None else bool(ok),
        }
        if detail:
            rec["detail"] = detail
        self.records.append(rec)
        self.seconds[name] = seconds

    def timed(self, name, inputs, thunk):
        start = time.perf_counter()
        try:
            residual = thunk()
            detail = None
            ok = None
        except BetheKitError as exc:
            residual = None
            detail = f"{type(exc).__name__}: {exc}"
            ok = False
        self.add(name, inputs, residual, ok=ok, detail=detail,
                 seconds=time.perf_counter() - start)

    def report(self, command, config):
        records = sorted(self.records, key=lambda r: r["name"])
        passed = sum(1 for r in records if r["pass"])
        return {
            "schema_version": SCHEMA_VERSION,
            "toolkit_version": __version__,
            "command": command,
            "config": config.echo(),
            "records": records,
            "summary": {
                "checks": len(records),
                "passed": passed,
                "failed": len(records) - passed,
            },
        }


def _draw_pairs(spec, rng, count, size):
    if spec.mode == EXACT:
        return [tuple(distinct_rationals(rng, size)) for _ in range(count)]
    return [tuple(distinct_complexes(rng, size)) for _ in range(count)]


def _suite_rng(config, suite):
    return random.Random(f"{config.seed}/{suite}")


def cmd_verify(config):
    """Identity suites: R-matrix, exchange relations, vacuum action."""
    spec = config.chain()
    rec = Recorder(spec.mode, config.tolerance)
    n = spec.n_sites
    if "rmatrix" in config.suites:
        rng = _suite_rng(config, "rmatrix")
        for i, triple in enumerate(_draw_pairs(spec, rng, config.samples, 3)):
            rec.timed(
                f"rmatrix/yang_baxter/{i:03d}",
                {"points": list(triple)},
                lambda t=triple: yang_baxter_residual(spec.kernel, *t),
            )
    if "rtt" in config.suites:
        rng = _suite_rng(config, "rtt")
        for i, (lam, mu) in enumerate(_draw_pairs(spec, rng, config.samples, 2)):
            rec.timed(
                f"rtt/exchange/{i:03d}",
                {"lambda": lam, "mu": mu},
                lambda a=lam, b=mu: rtt_residual(spec, a, b),
            )
    if "commutation" in config.suites:
        rng = _suite_rng(config, "commutation")
        for i, (lam, mu) in enumerate(_draw_pairs(spec, rng, config.samples, 2)):
            def worst(a=lam, b=mu):
                res = commutation_residuals(spec, a, b)
                return max(res.values(), key=lambda v: float(abs(v)))

            rec.timed(
                f"commutation/relations/{i:03d}",
                {"lambda": lam, "mu": mu},
                worst,
            )
    if "vacuum" in config.suites:
        rng = _suite_rng(config, "vacuum")
        if spec.mode == EXACT:
            points = distinct_rationals(rng, config.samples)
        else:
            points = distinct_complexes(rng, config.samples)
        vac = pseudovacuum(n, spec.mode)
        for i, lam in enumerate(points):
            def vacuum_residual(a=lam):
                t = monodromy(spec, a)
                av, dv = vacuum_eigenvalues(spec, a)
                worst = max_abs(t.a @ vac - vac * av)
                r = max_abs(t.d @ vac - vac * dv)
                worst = r if r > worst else worst
                r = max_abs(t.c @ vac)
                worst = r if r > worst else worst
                for x in range(1, n):
                    a_left, _ = vacuum_eigenvalues(spec, a, 1, x)
                    a_right, _ = vacuum_eigenvalues(spec, a, x + 1, n)
                    r = abs(a_left * a_right - av)
                    worst = r if r > worst else worst
                return worst

            rec.timed(f"vacuum/action/{i:03d}", {"lambda": lam}, vacuum_residual)
    if "transfer" in config.suites:
        rng = _suite_rng(config, "transfer")
        for i, (lam, mu) in enumerate(_draw_pairs(spec, rng, config.samples, 2)):
            def commutator(a=lam, b=mu):
                t1 = transfer_matrix(spec, a)
                t2 = transfer_matrix(spec, b)
                return max_abs(t1 @ t2 - t2 @ t1)

            rec.timed(
                f"transfer/commute/{i:03d}",
                {"lambda": lam, "mu": mu},
                commutator,
            )
    report = rec.report("verify", config)
    return report, rec, 0 if report["summary"]["failed"] == 0 else 1


def cmd_decompose(config):
    """Decomposition formulas checked against the formal Bethe vector."""
    spec = config.chain()
    rec = Recorder(spec.mode, config.tolerance)
    rng = _suite_rng(config, "decompose")
    n = spec.n_sites
    splits = config.splits
    if splits is None:
        splits = list(all_splits(n, 2)) if n >= 2 else []
    # Keep draws away from zeros of the local vacuum weights so the
    # homogeneous closed form stays defined.
    if spec.kernel.kind == "rational":
        avoid = list(spec.xi) + [x - 1 for x in spec.xi]
    else:
        avoid = list(spec.xi) + [x - spec.kernel.eta for x in spec.xi]
    for m in config.m_values:
        if spec.mode == EXACT:
            lambdas = distinct_rationals(rng, m, avoid=avoid)
        else:
            lambdas = distinct_complexes(rng, m, avoid=avoid)
        rows = decomposition_report(
            spec, lambdas, splits, include_homogeneous=config.include_homogeneous
        )
        for row in rows:
            cuts = "none" if row.cuts is None else "-".join(str(c) for c in row.cuts)
            rec.add(
                f"decompose/M{m}/{row.formula}/cuts_{cuts}",
                {"lambdas": lambdas, "terms": row.term_count},
                row.residual,
                ok=None if row.error is None else False,
                detail=row.error,
                seconds=row.seconds,
            )
    report = rec.report("decompose", config)
    return report, rec, 0 if report["summary"]["failed"] == 0 else 1


def cmd_solve(config):
    """Root search, certification and dense-spectrum matching."""
    spec = config.chain()
    rec = Recorder(FLOAT, config.tolerance)
    code = 0
    for m in config.m_values:
        start = time.perf_counter()
        result = solve_bethe(
            spec, m, n_guesses=config.guesses, seed=config.seed, probe=config.probe
        )
        solve_seconds = time.perf_counter() - start
        matching = None
        match_error = None
        if result.certificates and spec.n_sites <= DIMENSION_CAP:
            probe = result.certificates[0].probe_mu
            report_s = dense_spectrum(spec.as_float(), probe)
            try:
                matching = match_bethe_to_spectrum(
                    report_s, result.certificates, tol=config.match_tolerance
                )
            except UnmatchedCertificate as exc:
                match_error = str(exc)
        for i, cert in enumerate(result.certificates):
            worst = max(list(cert.bethe_residuals) + [cert.eigen_residual], default=0.0)
            ok = cert.is_valid(config.certificate_tolerance)
            detail = f"tau={complex(cert.tau_value):.12g}"
            if matching is not None:
                pair = matching.pairs[i]
                detail += f", matched sector {pair.sector} at distance {pair.distance:.3e}"
            elif match_error is not None:
                ok = False
                detail += f", {match_error}"
            rec.add(
                f"solve/M{m}/certificate/{i:02d}",
                {"roots": list(cert.roots), "probe": cert.probe_mu},
                worst,
                ok=ok,
                detail=detail,
                seconds=solve_seconds if i == 0 else 0.0,
            )
        counts = {}
        for rej in result.rejections:
            counts[rej.reason] = counts.get(rej.reason, 0) + 1
        rec.add(
            f"solve/M{m}/rejections",
            {"counts": counts, "guesses": config.guesses},
            None,
            ok=True,
            detail="rejections are informational",
        )
        if not result.certificates:
            rec.add(
                f"solve/M{m}/no_certificates",
                {"guesses": config.guesses},
                None,
                ok=False,
                detail="no guess survived screening",
            )
    report = rec.report("solve", config)
    return report, rec, 0 if report["summary"]["failed"] == 0 else 1


def cmd_spectrum(config):
    """Dense sector-resolved transfer spectrum at one probe point."""
    spec = config.chain().as_float()
    rec = Recorder(FLOAT, config.tolerance)
    probe = config.probe
    if probe is None:
        rng = _suite_rng(config, "probe")
        while True:
            z = complex(rng.uniform(-2.0, 2.0), rng.uniform(-1.0, 1.0))
            if all(abs(z - complex(x)) >= 0.1 for x in spec.xi):
                probe = z
                break
    start = time.perf_counter()
    report_s = dense_spectrum(spec, probe)
    seconds = time.perf_counter() - start
    rec.add(
        "spectrum/off_sector",
        {"probe": probe},
        report_s.off_sector_residual,
        seconds=seconds,
    )
    for sector in report_s.sectors:
        for i, ev in enumerate(sector.eigenvalues):
            rec.add(
                f"spectrum/sector{sector.m}/ev{i:03d}",
                {"m": sector.m, "value": complex(ev)},
                None,
                ok=True,
            )
    report = rec.report("spectrum", config)
    return report, rec, 0 if report["summary"]["failed"] == 0 else 1


COMMANDS = {
    "verify": cmd_verify,
    "decompose": cmd_decompose,
    "solve": cmd_solve,
    "spectrum": cmd_spectrum,
}


def render_json(report):
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def render_table(report, seconds):
    lines = []
    header = f"{'check':<48} {'residual':>14} {'pass':>5} {'ms':>8}"
    lines.append(header)
    lines.append("-" * len(header))
    for r in report["records"]:
        res = r["residual"]
        if res is None:
            shown = "-"
        elif isinstance(res, str):
            shown = res if len(res) <= 14 else f"{float(mpq(res)):.3e}"
        else:
            shown = f"{float(res):.3e}"
        ms = seconds.get(r["name"], 0.0) * 1000
        lines.append(
            f"{r['name']:<48} {shown:>14} {str(r['pass']):>5} {ms:>8.2f}"
        )
    s = report["summary"]
    lines.append(
        f"{s['checks']} checks, {s['passed']} passed, {s['failed']} failed"
    )
    return "\n".join(lines) + "\n"


def build_parser():
    parser = argparse.ArgumentParser(
        prog="bethekit",
        description="check suites for spin-chain Bethe vector identities",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn in COMMANDS.items():
        p = sub.add_parser(name, help=fn.__doc__)
        p.add_argument("--config", required=True, help="JSON run configuration")
        p.add_argument("--seed", type=int, default=None, help="override the config seed")
        p.add_argument("--out", default=None, help="write the JSON report here")
        p.add_argument(
            "--format", choices=("json", "table"), default="table",
            help="stdout rendering",
        )
    return parser


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        config = load_config(args.config)
        if args.seed is not None:
            if args.seed < 0:
                raise ConfigInvalid("seed must be nonnegative")
            config.seed = args.seed
        report, rec, code = COMMANDS[args.command](config)
    except BetheKitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    payload = render_json(report)
    if args.out:
        try:
            with open(args.out, "w") as fh:
                fh.write(payload)
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
            return 2
    if args.format == "json":
        sys.stdout.write(payload)
    else:
        sys.stdout.write(render_table(report, rec.seconds))
    return code


def main():
    raise SystemExit(run())
