"""Command-line driver for the verification suites."""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .affine import ConfigError, EvalRepConfig, q_value
from .budget import TermBudgetExceeded, set_term_budget
from .report import REPORT_VERSION, VerificationReport, timed

SUITE_IDS = ("base-hopf", "quasi-hopf-twist", "cocycle", "dynamical-ybe", "drinfeld",
             "r-universal-vs-closed", "graded-ybe", "face-diff-eq", "face-initial", "face-dybe",
             "qseries-identities", "vertex-product-vs-closed", "vertex-diff-eq", "vertex-ybe", "root-data")

# per-suite default truncation orders: (order_p, order_z, order_zeta, modes)
DEFAULT_ORDERS = {
    "drinfeld": {"modes": 4},
    "r-universal-vs-closed": {"order_z": 8},
    "face-diff-eq": {"order_p": 6, "order_z": 6},
    "face-initial": {"order_p": 6, "order_z": 6},
    "face-dybe": {"order_p": 4},
    "qseries-identities": {"order_p": 8},
    "vertex-product-vs-closed": {"order_p": 8, "order_zeta": 8},
    "vertex-diff-eq": {"order_p": 6, "order_zeta": 6},
    "vertex-ybe": {"order_p": 3},
}


@dataclass
class SuiteConfig:
    suite: str = "all"
    q: str = "symbolic"
    q_samples: int = 5
    theta: List[int] = field(default_factory=lambda: [1])
    w_mode: str = "symbolic"
    xi: List[str] = field(default_factory=lambda: ["0", "1"])
    n: List[int] = field(default_factory=lambda: [1, 2, 3, 4])
    c0: int = 0
    order_p: Optional[int] = None
    order_z: Optional[int] = None
    order_zeta: Optional[int] = None
    modes: Optional[int] = None
    seed: int = 0
    out: Optional[str] = None
    format: str = "json"
    workers: int = 1
    term_budget: Optional[int] = None

    def validate(self) -> None:
        for s in self.suites():
            if s not in SUITE_IDS:
                raise ConfigError(f"unknown suite {s!r}")
        for name in ("order_p", "order_z", "order_zeta", "modes"):
            v = getattr(self, name)
            if v is not None and v < 1:
                raise ConfigError(f"{name.replace('_', '-')} must be >= 1")
        if self.format not in ("json", "text", "csv"):
            raise ConfigError(f"unknown format {self.format!r}")
        if self.q_samples < 1:
            raise ConfigError("q-samples must be >= 1")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")
        if not self.theta or len(self.theta) > 3 or any(int(t) != t or t == 0 for t in self.theta):
            raise ConfigError("theta must be one to three nonzero integers")
        if any(n < 1 for n in self.n):
            raise ConfigError("n must be >= 1")
        self.q_field()
        self.w_field()
        [Fraction(x) for x in self.xi]
        if self.format == "csv" and any(s not in TABLE_SUITES for s in self.suites()):
            raise ConfigError("csv output is available only for suites with coefficient tables: "
                              + ", ".join(TABLE_SUITES))

    def suites(self) -> List[str]:
        if self.suite == "all":
            return list(SUITE_IDS)
        return [s.strip() for s in self.suite.split(",") if s.strip()]

    def q_field(self):
        if self.q == "symbolic":
            return None
        try:
            return q_value(Fraction(self.q))
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"invalid q {self.q!r}: {exc}") from None

    def w_field(self):
        if self.w_mode == "symbolic":
            return None
        try:
            w = Fraction(self.w_mode)
        except (ValueError, ZeroDivisionError):
            raise ConfigError(f"invalid w-mode {self.w_mode!r}") from None
        if w in (0, 1):
            raise ConfigError("w must avoid 0 and 1")
        return w

    def order(self, suite: str, name: str) -> int:
        v = getattr(self, name)
        return v if v is not None else DEFAULT_ORDERS.get(suite, {}).get(name, 4)

    def echo(self, suite: str) -> Dict[str, object]:
        d = asdict(self)
        d["suite"] = suite
        for name in ("order_p", "order_z", "order_zeta", "modes"):
            d[name] = self.order(suite, name)
        return d


# -- sampling ---------------------------------------------------------------------

def _rand_rational(rng: random.Random, lo: int = -9, hi: int = 9, den: int = 7) -> Fraction:
    while True:
        v = Fraction(rng.randint(lo, hi), rng.randint(1, den))
        if v not in (0, 1, -1):
            return v


def _distinct(rng: random.Random, k: int) -> Tuple[Fraction, ...]:
    while True:
        vals = tuple(_rand_rational(rng) for _ in range(k))
        if len(set(vals)) == k and all(a != -b for i, a in enumerate(vals) for b in vals[i + 1:]):
            return vals


# -- suite runners --------------------------------------------------------------------

def _run_base_hopf(cfg: SuiteConfig) -> VerificationReport:
    from .quasihopf import verify_base_hopf
    return verify_base_hopf()


def _run_twist(cfg: SuiteConfig) -> VerificationReport:
    from .quasihopf import verify_twisted_axioms
    return verify_twisted_axioms()


def _run_cocycle(cfg: SuiteConfig) -> VerificationReport:
    from .quasihopf import verify_shifted_cocycle
    return verify_shifted_cocycle()


def _run_dybe(cfg: SuiteConfig) -> VerificationReport:
    from .quasihopf import verify_dynamical_identities
    return verify_dynamical_identities()


def _run_drinfeld(cfg: SuiteConfig) -> VerificationReport:
    from .affine import verify_drinfeld_relations
    return verify_drinfeld_relations(cfg.order("drinfeld", "modes"),
                                     EvalRepConfig(theta=cfg.theta[0], c0=cfg.c0, q=cfg.q_field()))


def _run_r_closed(cfg: SuiteConfig) -> VerificationReport:
    from .affine import verify_r_universal_vs_closed
    th = cfg.theta + [cfg.theta[-1]] * (2 - len(cfg.theta)) if len(cfg.theta) < 2 else cfg.theta
    return verify_r_universal_vs_closed(cfg.order("r-universal-vs-closed", "order_z"), th[0], th[1], cfg.q_field())


def _run_graded_ybe(cfg: SuiteConfig) -> VerificationReport:
    from .affine import verify_graded_ybe
    rep = VerificationReport("graded-ybe")
    rng = random.Random(cfg.seed)
    th = (cfg.theta * 3)[:3] if len(cfg.theta) == 1 else (cfg.theta + [cfg.theta[-1]])[:3]
    fixed_q = cfg.q_field()
    runs = [(th, None) for _ in range(cfg.q_samples)]
    if len(set(th)) == 1:
        runs += [((1, 2, 3), None), ((2, 1, 3), None)]
    first = None
    for thetas, _ in runs:
        while True:
            qv = fixed_q if fixed_q is not None else q_value(_rand_rational(rng, 2, 9, 5))
            zs = _distinct(rng, 3)
            try:
                with timed() as t:
                    res = verify_graded_ybe(*zs, *thetas, q=qv)
                break
            except ZeroDivisionError:
                continue
        first = first or (zs, thetas, qv)
        tag = f"q={qv},z={','.join(map(str, zs))},theta={','.join(map(str, thetas))}"
        rep.check(f"graded-ybe[{tag}]", res, ms=t["ms"])
    zs, thetas, qv = first
    with timed() as t:
        res = verify_graded_ybe(*zs, *thetas, q=qv, flip="ungraded")
    rep.check("graded-ybe-ungraded-flip", res, kind="control", ms=t["ms"])
    return rep


def _run_face_diff(cfg: SuiteConfig) -> VerificationReport:
    from .face import verify_face_difference_eq
    return verify_face_difference_eq(cfg.order("face-diff-eq", "order_p"), cfg.order("face-diff-eq", "order_z"),
                                     cfg.q_field(), cfg.w_field())


def _run_face_initial(cfg: SuiteConfig) -> VerificationReport:
    from .face import verify_face_initial
    return verify_face_initial(cfg.order("face-initial", "order_p"), cfg.order("face-initial", "order_z"),
                               cfg.q_field(), cfg.w_field())


def _run_face_dybe(cfg: SuiteConfig) -> VerificationReport:
    from .face import verify_face_dynamical_ybe
    rng = random.Random(cfg.seed)
    samples = [_distinct(rng, 3) for _ in range(2)]
    return verify_face_dynamical_ybe(cfg.order("face-dybe", "order_p"), samples, cfg.q_field(), cfg.w_field())


def _run_qseries(cfg: SuiteConfig) -> VerificationReport:
    from .face import verify_phi10_identity
    return verify_phi10_identity(cfg.order("qseries-identities", "order_p"), cfg.q_field())


def _run_vertex_product(cfg: SuiteConfig) -> VerificationReport:
    from .vertex import verify_vertex_product
    Np = cfg.order("vertex-product-vs-closed", "order_p")
    return verify_vertex_product(Np, cfg.order("vertex-product-vs-closed", "order_zeta"),
                                 max(1, min(6, Np)), max(1, min(4, Np // 2)), cfg.q_field())


def _run_vertex_diff(cfg: SuiteConfig) -> VerificationReport:
    from .vertex import verify_vertex_difference_eq
    N = min(cfg.order("vertex-diff-eq", "order_p"), cfg.order("vertex-diff-eq", "order_zeta"))
    return verify_vertex_difference_eq(N, cfg.q_field())


def _run_vertex_ybe(cfg: SuiteConfig) -> VerificationReport:
    from .vertex import verify_vertex_ybe
    rng = random.Random(cfg.seed)
    samples = [_distinct(rng, 3) for _ in range(2)]
    return verify_vertex_ybe(cfg.order("vertex-ybe", "order_p"), samples, cfg.q_field())


def _run_root_data(cfg: SuiteConfig) -> VerificationReport:
    from .rootdata import verify_root_data
    return verify_root_data(tuple(cfg.n), tuple(Fraction(x) for x in cfg.xi))


RUNNERS: Dict[str, Callable[[SuiteConfig], VerificationReport]] = {
    "base-hopf": _run_base_hopf, "quasi-hopf-twist": _run_twist, "cocycle": _run_cocycle,
    "dynamical-ybe": _run_dybe, "drinfeld": _run_drinfeld, "r-universal-vs-closed": _run_r_closed,
    "graded-ybe": _run_graded_ybe, "face-diff-eq": _run_face_diff, "face-initial": _run_face_initial,
    "face-dybe": _run_face_dybe, "qseries-identities": _run_qseries,
    "vertex-product-vs-closed": _run_vertex_product, "vertex-diff-eq": _run_vertex_diff,
    "vertex-ybe": _run_vertex_ybe, "root-data": _run_root_data,
}

TABLE_SUITES = ("vertex-product-vs-closed",)


def run_suite(cfg: SuiteConfig, suite: str = None) -> VerificationReport:
    """Run one suite; raises ConfigError or TermBudgetExceeded."""
    suite = suite or cfg.suite
    if suite not in RUNNERS:
        raise ConfigError(f"unknown suite {suite!r}")
    set_term_budget(cfg.term_budget)
    try:
        rep = RUNNERS[suite](cfg)
    finally:
        set_term_budget(None)
    rep.suite = suite
    rep.config = cfg.echo(suite)
    return rep


def _worker(args):
    cfg, suite = args
    return run_suite(cfg, suite)


def run_all(cfg: SuiteConfig) -> List[VerificationReport]:
    suites = cfg.suites()
    if cfg.workers > 1 and len(suites) > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            return list(pool.map(_worker, [(cfg, s) for s in suites]))
    return [run_suite(cfg, s) for s in suites]


# -- output ---------------------------------------------------------------------------

def x_tables(cfg: SuiteConfig) -> Dict[str, str]:
    """CSV text of the X_ij coefficients keyed by entry name."""
    from .vertex import solve_x_system, x_csv_rows
    N = cfg.order("vertex-product-vs-closed", "order_p")
    X = solve_x_system(N, cfg.order("vertex-product-vs-closed", "order_zeta"), cfg.q_field())
    out = {}
    for name, ser in X.items():
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["p_half_order", "zeta_order", "num", "den"])
        w.writerows(x_csv_rows(ser))
        out[name] = buf.getvalue()
    return out


def render(reports: Sequence[VerificationReport], fmt: str, timing: bool = True) -> str:
    if fmt == "text":
        return "\n".join(r.to_text() for r in reports) + "\n"
    if len(reports) == 1:
        return reports[0].to_json(timing) + "\n"
    doc = {"reports": [r.to_dict(timing) for r in reports], "version": REPORT_VERSION}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _write(path: Optional[str], text: str) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror}") from None


def emit_report(reports: Sequence[VerificationReport], cfg: SuiteConfig) -> None:
    if cfg.format == "csv":
        tables = x_tables(cfg)
        if cfg.out is None:
            for name, text in tables.items():
                sys.stdout.write(f"# {name}\n{text}")
        else:
            p = Path(cfg.out)
            for name, text in tables.items():
                _write(str(p.with_name(f"{p.stem}_{name}{p.suffix or '.csv'}")), text)
        return
    _write(cfg.out, render(reports, cfg.format))


# -- argument handling -------------------------------------------------------------------

def _int_list(text: str) -> List[int]:
    return [int(x) for x in str(text).split(",") if x.strip()]


def _str_list(text: str) -> List[str]:
    return [x.strip() for x in str(text).split(",") if x.strip()]


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qsuper-verify", description="Run exact verification suites.")
    p.add_argument("--config", help="JSON file with default values for any flag")
    p.add_argument("--suite", help="suite id, comma-separated ids, or 'all'")
    p.add_argument("--q", help="'symbolic' or an exact rational such as 7/5")
    p.add_argument("--q-samples", type=int, help="number of random sample tuples (graded-ybe)")
    p.add_argument("--theta", help="one to three nonzero integers, comma-separated")
    p.add_argument("--w-mode", help="'symbolic' or an exact rational face parameter")
    p.add_argument("--xi", help="comma-separated rationals for root-data")
    p.add_argument("--n", help="comma-separated ranks for root-data")
    p.add_argument("--c0", type=int, help="central constant c0 of the evaluation module")
    p.add_argument("--order-p", type=int, help="p order (p^{1/2} order for vertex suites)")
    p.add_argument("--order-z", type=int)
    p.add_argument("--order-zeta", type=int)
    p.add_argument("--modes", type=int, help="Drinfeld mode bound |n|,|m|")
    p.add_argument("--seed", type=int)
    p.add_argument("--out", help="output path (stdout by default)")
    p.add_argument("--format", choices=("json", "text", "csv"))
    p.add_argument("--workers", type=int)
    p.add_argument("--term-budget", type=int, help="abort when any exact object exceeds this many terms")
    return p


_CONVERT = {"theta": _int_list, "n": _int_list, "xi": _str_list}


def config_from_args(argv: Sequence[str] = None) -> SuiteConfig:
    args = build_parser().parse_args(argv)
    values: Dict[str, object] = {}
    if args.config:
        try:
            data = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from None
        if not isinstance(data, dict):
            raise ConfigError("config file must hold a JSON object")
        for k, v in data.items():
            values[k.replace("-", "_")] = v
    for k, v in vars(args).items():
        if k != "config" and v is not None:
            values[k] = v
    known = set(SuiteConfig.__dataclass_fields__)
    unknown = set(values) - known
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
    for k, fn in _CONVERT.items():
        if k in values and not isinstance(values[k], list):
            values[k] = fn(values[k])
    if "q" in values:
        values["q"] = str(values["q"])
    if "w_mode" in values:
        values["w_mode"] = str(values["w_mode"])
    if "xi" in values:
        values["xi"] = [str(x) for x in values["xi"]]
    try:
        cfg = SuiteConfig(**values)
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from None
    cfg.validate()
    return cfg


def main(argv: Sequence[str] = None) -> int:
    try:
        cfg = config_from_args(argv)
        reports = run_all(cfg)
        emit_report(reports, cfg)
    except (ConfigError, ValueError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except TermBudgetExceeded as exc:
        print(f"aborted: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0 if all(r.passed for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())
