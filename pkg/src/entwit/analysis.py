"""Per-state reports, family scans and detection-threshold bracketing."""

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy.optimize import bisect

from . import criteria, statezoo
from .errors import BadRange, RealignmentNotHermitian
from .linalg import DEFAULT_TOL
from .posmap import MapParams, choi_spectrum, positivity_verdict
from .witness import build_witness, gamma_for_state, reference_gamma, witness_value, witness_verdict

WITNESS_DIM = 16
CSV_COLUMNS = (
    "param", "ppt_min_eig", "ccnr_value", "dv_value", "ct_best_margin",
    "witness_value", "gamma", "verdict",
)
POSITIVITY_COLUMNS = ("positivity_kind", "positivity_ratio")


@dataclass
class WitnessReport:
    ppt: criteria.CriterionResult
    ccnr: criteria.CriterionResult
    dv: criteria.CriterionResult
    ct: criteria.CriterionResult
    witness_value: float | None
    gamma: float | None
    gamma_source: str | None
    witness_verdict: str
    verdict: str

    def to_dict(self):
        return asdict(self)


def analyze_state(s, p, gamma=None, ct_grid=criteria.DEFAULT_CT_GRID, tol=DEFAULT_TOL):
    """Run every criterion and, for 16-dimensional states, the witness.

    Without ``gamma`` the witness uses :func:`gamma_for_state`.
    """
    p = MapParams.coerce(p)
    results = dict(
        ppt=criteria.ppt(s, tol),
        ccnr=criteria.ccnr(s),
        dv=criteria.dv(s),
        ct=criteria.ct_scan(s, ct_grid),
    )
    if s.dim == WITNESS_DIM:
        if gamma is None:
            gamma, source = gamma_for_state(s, p), "gamma_for_state"
        else:
            source = "explicit"
        w = build_witness(p, gamma, gamma_source=source)
        wv = witness_value(s, w)
        wverdict = witness_verdict(wv, tol)
    else:
        gamma = source = wv = None
        wverdict = "n/a"
    detected = wverdict == "entangled" or any(r.detected for r in results.values())
    if detected:
        verdict = "entangled"
    elif wverdict.startswith("inconclusive"):
        verdict = "inconclusive"
    else:
        verdict = "undetected"
    return WitnessReport(**results, witness_value=wv, gamma=gamma, gamma_source=source,
                         witness_verdict=wverdict, verdict=verdict)


def parse_range(text):
    """``"start:stop:step"`` or a single number -> list of floats.

    ``stop`` is included when ``step`` divides the span within ``1e-12``.
    """
    parts = text.split(":")
    try:
        nums = [float(x) for x in parts]
    except ValueError:
        raise BadRange(f"cannot parse range {text!r}") from None
    if len(nums) == 1:
        return nums
    if len(nums) != 3:
        raise BadRange(f"range {text!r} must be start:stop:step")
    start, stop, step = nums
    if not all(math.isfinite(v) for v in nums) or step <= 0 or stop < start:
        raise BadRange(f"range {text!r} needs finite start <= stop and step > 0")
    n = (stop - start) / step
    k = round(n)
    if abs(n - k) * step <= 1e-12:
        count = k + 1
    else:
        count = math.floor(n) + 1
    # snap values so that 0.05*3 prints as 0.15
    return [round(start + i * step, 12) + 0.0 for i in range(count)]  # +0.0 drops -0.0


@dataclass
class ScanRow:
    point: dict
    ppt: criteria.CriterionResult
    ccnr: criteria.CriterionResult
    dv: criteria.CriterionResult
    ct: criteria.CriterionResult
    witness_value: float | None
    gamma: float | None
    verdict: str
    positivity: object = None

    def csv_fields(self, with_positivity=False):
        point = ";".join(f"{k}={v!r}" for k, v in self.point.items())
        row = [
            point, repr(self.ppt.value), repr(self.ccnr.value), repr(self.dv.value),
            repr(self.ct.margin),
            "" if self.witness_value is None else repr(self.witness_value),
            "" if self.gamma is None else repr(self.gamma),
            self.verdict,
        ]
        if with_positivity:
            pv = self.positivity
            row += ["" if pv is None else pv.kind.value,
                    "" if pv is None or pv.ratio_bound is None else repr(pv.ratio_bound)]
        return row


@dataclass
class ScanReport:
    family: statezoo.FamilySpec
    alpha: float
    beta: float
    rows: list = field(default_factory=list)

    @property
    def with_positivity(self):
        return self.family.name == "bell_diagonal"

    def to_dict(self):
        return {
            "family": self.family.name,
            "parameters": self.family.parameters,
            "ranges": self.family.ranges,
            "alpha": self.alpha,
            "beta": self.beta,
            "rows": [
                {
                    **asdict(r),
                    "positivity": None if r.positivity is None else {
                        "kind": r.positivity.kind.value,
                        "ratio_bound": r.positivity.ratio_bound,
                        "lam_pt": r.positivity.lam_pt,
                        "lam_r": r.positivity.lam_r,
                    },
                }
                for r in self.rows
            ],
        }


def _grid_points(spec):
    names = list(spec.ranges)
    for combo in itertools.product(*(spec.ranges[n] for n in names)):
        yield dict(zip(names, combo))


def scan_family(spec, p, gamma=None, ct_grid=criteria.DEFAULT_CT_GRID, workers=None, tol=DEFAULT_TOL):
    """Evaluate every criterion over the cartesian grid of ``spec.ranges``.

    ``spec.ranges`` maps names to lists of values. Rows come back in grid
    order whatever the thread scheduling.
    """
    p = MapParams.coerce(p)
    points = list(_grid_points(spec))

    def one(point):
        s = spec.build(**point)
        rep = analyze_state(s, p, gamma, ct_grid, tol)
        pv = None
        if spec.name == "bell_diagonal":
            try:
                pv = positivity_verdict(s, tol)
            except RealignmentNotHermitian:
                pv = None
        return ScanRow(point, rep.ppt, rep.ccnr, rep.dv, rep.ct, rep.witness_value,
                       rep.gamma, rep.verdict, pv)

    if workers and workers > 1:
        with ThreadPoolExecutor(workers) as ex:
            rows = list(ex.map(one, points))
    else:
        rows = [one(pt) for pt in points]
    return ScanReport(spec, p.alpha, p.beta, rows)


def bracket_threshold(margin, lo, hi, xtol=1e-9):
    """Bisection root of ``margin`` on ``[lo, hi]``, whose endpoints must differ in sign."""
    return bisect(margin, lo, hi, xtol=xtol)


def detection_ranges(margin, lo, hi, n_grid=400, xtol=1e-9):
    """Sub-intervals of ``[lo, hi]`` on which ``margin > 0``.

    ``margin`` is sampled on ``n_grid + 1`` evenly spaced points; every sign
    change is refined by bisection to ``xtol``.
    """
    xs = np.linspace(lo, hi, n_grid + 1)
    ms = np.array([margin(x) for x in xs])
    pos = ms > 0
    edges = []
    for i in range(n_grid):
        if pos[i] != pos[i + 1]:
            edges.append(bracket_threshold(margin, xs[i], xs[i + 1], xtol))
    ranges, start = [], (lo if pos[0] else None)
    for e in edges:
        if start is None:
            start = e
        else:
            ranges.append((start, e))
            start = None
    if start is not None:
        ranges.append((start, hi))
    return ranges


def _criterion_margin(name):
    def margin(s):
        if name == "ct":
            return criteria.ct_scan(s).margin
        return getattr(criteria, name)(s).margin
    return margin


@dataclass
class TableRow:
    criterion: str
    ranges: list

    def describe(self, var, lo, hi, open_lo, open_hi):
        if not self.ranges:
            return "does not detect"
        out = []
        for a, b in self.ranges:
            left = (f"{lo:g} < " if open_lo else f"{lo:g} <= ") if a == lo else f"{a:.6f} < "
            right = (f" < {hi:g}" if open_hi else f" <= {hi:g}") if b == hi else f" < {b:.6f}"
            out.append(f"{left}{var}{right}")
        return ", ".join(out)


@dataclass
class ReproducedTable:
    title: str
    var: str
    domain: tuple
    open_ends: tuple
    rows: list

    def lines(self):
        yield self.title
        for row in self.rows:
            yield f"  {row.criterion:<38} {row.describe(self.var, *self.domain, *self.open_ends)}"

    def to_dict(self):
        return {
            "title": self.title,
            "variable": self.var,
            "domain": list(self.domain),
            "rows": [{"criterion": r.criterion, "ranges": [list(x) for x in r.ranges],
                      "text": r.describe(self.var, *self.domain, *self.open_ends)} for r in self.rows],
        }


def _witness_margin(p, gamma=None):
    w_fixed = None if gamma is None else build_witness(p, gamma, gamma_source="explicit")

    def margin(s):
        w = w_fixed or build_witness(p, gamma_for_state(s, p))
        return -witness_value(s, w)
    return margin


def _table(title, var, build, lo, hi, open_ends, p, extra=(), n_grid=200):
    rows = []
    named = [("dV", _criterion_margin("dv")), ("CCNR", _criterion_margin("ccnr")),
             ("CT (default grid)", _criterion_margin("ct")),
             ("witness W (gamma_for_state)", _witness_margin(p))] + list(extra)
    for label, m in named:
        rows.append(TableRow(label, detection_ranges(lambda x: m(build(x)), lo, hi, n_grid)))
    return ReproducedTable(title, var, (lo, hi), open_ends, rows)


def reproduce_table1(p=(1.0, 1.0), n_grid=200):
    """Detection ranges for ``kye_state(1, 1, r)``, ``0 < r < 1``."""
    p = MapParams.coerce(p)
    eps = 1e-6
    t = _table("Detection ranges for kye_state(z=1, p=1, r), 0 < r < 1", "r",
               lambda r: statezoo.kye_state(1, 1, r), eps, 1 - eps, (True, True), p, n_grid=n_grid)
    # the open interval was sampled on [eps, 1-eps]; report it as (0, 1)
    t.rows = [TableRow(r.criterion, [(0.0 if a == eps else a, 1.0 if b == 1 - eps else b)
                                     for a, b in r.ranges]) for r in t.rows]
    t.domain = (0.0, 1.0)
    return t


def reproduce_table2(p=(1.0, 1.0), n_grid=200):
    """Detection ranges for ``noisy_bes(lam)``, ``0 <= lam <= 1``."""
    p = MapParams.coerce(p)
    extra = [("witness W (constant reference gamma)", _witness_margin(p, reference_gamma(p)))]
    return _table("Detection ranges for noisy_bes(lambda), 0 <= lambda <= 1", "lambda",
                  statezoo.noisy_bes, 0.0, 1.0, (False, False), p, extra, n_grid)


def choi_spectrum_comparison(p=(1.0, 1.0)):
    """Computed Choi spectrum next to the three-nonzero closed form ``{-2a, 2a, 2(a+b)}``."""
    p = MapParams.coerce(p)
    a, b = p.alpha, p.beta
    computed = np.asarray(choi_spectrum(p))
    closed = np.sort(np.r_[-2 * a, 2 * a, 2 * (a + b), np.zeros(13)])
    return {"alpha": a, "beta": b, "computed": computed.tolist(), "closed_form": closed.tolist(),
            "max_abs_diff": float(np.max(np.abs(computed - closed)))}
