"""Executable axiom checks.

Each check draws its witnesses from a generator keyed by ``(seed, axiom)``,
so a report depends only on its configuration and never on which other
checks ran before it. Witnesses are drawn up front in a fixed order and
then evaluated in shape-homogeneous batches.

Continuity and the uniqueness statements are not checked: neither can be
decided from finitely many evaluations.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import product
from typing import Optional, Sequence

import numpy as np

from .conditional import CHAIN_FAMILIES, chain_rule, conditional_aczel_daroczy
from .core import (
    AuditReport,
    DomainError,
    EntropyParams,
    InvalidParameter,
    as_probs,
    escort_weights,
    make_joint,
    uniform,
)
from .entropies import EntropyFamily, aczel_daroczy, compose, entropy, normalization_target
from .qalgebra import h_map, q_add

DEFAULT_TOLERANCE = 1e-9
NEAR_VERTEX_EPS = 1e-3

COUNTEREXAMPLE_JOINT = ((0.25, 0.25), (0.5, 0.0))
COUNTEREXAMPLE_Q = 2.0

_AXIOM_KEYS = {"A2": 2, "A3": 3, "A4": 4, "A5": 5, "C1": 11, "C3": 13, "C4": 14}

GRID_Q = (0.5, 1.0, 2.0, 3.0)
GRID_TAU = (-0.5, -1.0, -2.0)
GRID_LAMBDA = (-1.0, 0.0, 1.0)


@dataclass(frozen=True)
class AuditSuiteConfig:
    family: EntropyFamily
    params: EntropyParams = EntropyParams()
    trials: int = 1000
    max_n: int = 5
    max_m: int = 5
    seed: int = 42
    tolerance: float = DEFAULT_TOLERANCE

    def __post_init__(self):
        object.__setattr__(self, "family", EntropyFamily.parse(self.family))
        if int(self.trials) < 1:
            raise InvalidParameter(f"trials must be >= 1, got {self.trials}")
        if self.max_n < 2 or self.max_m < 2:
            raise InvalidParameter("max_n and max_m must be >= 2")
        if not self.tolerance > 0:
            raise InvalidParameter(f"tolerance must be > 0, got {self.tolerance}")


def parameter_grid(family) -> list:
    """The default sweep, varying only the parameters ``family`` reads."""
    family = EntropyFamily.parse(family)
    if family is EntropyFamily.Shannon:
        return [EntropyParams()]
    if family in (EntropyFamily.Nath, EntropyFamily.Corrected):
        return [EntropyParams(q=q, tau=t) for q, t in product(GRID_Q, GRID_TAU)]
    if family is EntropyFamily.GClass:
        return [EntropyParams(q=q, lam=lam) for q, lam in product(GRID_Q, GRID_LAMBDA)]
    return [EntropyParams(q=q) for q in GRID_Q]


def _rng(seed: int, axiom: str) -> np.random.Generator:
    return np.random.default_rng([int(seed) % 2**64, _AXIOM_KEYS[axiom]])


def _mixed_simplex(rng, size, k):
    # flat, edge-concentrated and centre-concentrated draws in equal measure
    conc = rng.choice((0.2, 1.0, 5.0), size=(size, 1))
    x = rng.gamma(np.broadcast_to(conc, (size, k)))
    s = x.sum(axis=-1, keepdims=True)
    x = np.where(s > 0, x, 1.0)
    return x / x.sum(axis=-1, keepdims=True)


def _near_vertices(n, eps=NEAR_VERTEX_EPS):
    v = np.full((n, n), eps / (n - 1))
    np.fill_diagonal(v, 1.0 - eps)
    return v


def _report(axiom, config, witness, lhs, rhs, gap, seed=None):
    return AuditReport(
        axiom_id=axiom,
        family=config.family.value,
        params=config.params,
        witness=witness,
        lhs=float(lhs),
        rhs=float(rhs),
        gap=float(gap),
        tolerance=config.tolerance,
        seed=seed,
    )


def _batched(fn, batch):
    """Apply ``fn`` to a batch, falling back to per-item calls when one item is out of domain."""
    try:
        return fn(batch)
    except DomainError:
        out = []
        for item in batch:
            try:
                out.append(fn(item[None])[0])
            except DomainError:
                out.append(np.nan)
        return np.asarray(out)


def check_maximality(config: AuditSuiteConfig) -> AuditReport:
    """Largest ``D(P) - D(U_n)`` over sampled, near-vertex and uniform P, for n = 2..max_n."""
    rng = _rng(config.seed, "A2")
    fam, params = config.family, config.params
    worst = None
    for n in range(2, config.max_n + 1):
        pts = np.vstack([_mixed_simplex(rng, config.trials, n), _near_vertices(n), uniform(n).probs[None]])
        top = entropy(fam, uniform(n), params)
        excess = _batched(lambda b: entropy(fam, b, params), pts) - top
        excess = np.where(np.isnan(excess), np.inf, excess)
        k = int(np.argmax(excess))
        if worst is None or excess[k] > worst[0]:
            worst = (excess[k], pts[k], top)
    excess, p, top = worst
    return _report("A2", config, {"p": p.tolist()}, top + excess, top, max(0.0, excess), config.seed)


def check_expandability(config: AuditSuiteConfig) -> AuditReport:
    rng = _rng(config.seed, "A3")
    fam, params = config.family, config.params
    sizes = rng.integers(2, config.max_n + 1, size=config.trials)
    worst = None
    for n in np.unique(sizes):
        pts = _mixed_simplex(rng, int(np.sum(sizes == n)), int(n))
        padded = np.hstack([pts, np.zeros((pts.shape[0], 1))])
        base = entropy(fam, pts, params)
        ext = entropy(fam, padded, params)
        gap = np.abs(ext - base)
        k = int(np.argmax(gap))
        if worst is None or gap[k] > worst[0]:
            worst = (gap[k], pts[k], ext[k], base[k])
    gap, p, ext, base = worst
    return _report("A3", config, {"p": p.tolist()}, ext, base, gap, config.seed)


def _sample_joints(rng, config, count):
    """Uniform joints on the simplex, grouped by (n, m)."""
    shapes = np.column_stack(
        [rng.integers(2, config.max_n + 1, size=count), rng.integers(2, config.max_m + 1, size=count)]
    )
    groups = {}
    for n, m in sorted({(int(a), int(b)) for a, b in shapes}):
        x = rng.exponential(size=(int(np.sum((shapes[:, 0] == n) & (shapes[:, 1] == m))), n, m))
        groups[(n, m)] = x / x.sum(axis=(-2, -1), keepdims=True)
    return groups


def _group_by_shape(mats):
    groups = {}
    for r in mats:
        r = make_joint(r).r
        groups.setdefault(r.shape, []).append(r)
    return {k: np.stack(v) for k, v in groups.items()}


def check_chain_rule(config: AuditSuiteConfig, joints: Optional[Sequence] = None) -> AuditReport:
    """Worst gap of ``D(PQ) = D(P) o D(Q|P)`` over sampled (or given) joints.

    For the Jizba-Korbel and Aczel-Daroczy families the counterexample
    joint is always evaluated first and its own evaluation is reported in
    ``witness["injected"]``.
    """
    fam, params = config.family, config.params
    if fam not in CHAIN_FAMILIES:
        raise InvalidParameter(f"no chain rule for the {fam.value} family")
    injected = None
    groups = {}
    if joints is not None:
        groups = _group_by_shape(joints)
    elif fam in (EntropyFamily.JizbaKorbel, EntropyFamily.AczelDaroczy):
        # the counterexample takes the place of trial 0
        ev = chain_rule(COUNTEREXAMPLE_JOINT, fam, params)
        injected = {
            "r": [list(row) for row in COUNTEREXAMPLE_JOINT],
            "lhs": ev.joint_entropy,
            "rhs": ev.combined,
            "gap": ev.gap,
        }
        if config.trials > 1:
            groups = _sample_joints(_rng(config.seed, "A4"), config, config.trials - 1)
    else:
        groups = _sample_joints(_rng(config.seed, "A4"), config, config.trials)
    worst = None
    if injected is not None:
        worst = (injected["gap"], np.array(COUNTEREXAMPLE_JOINT), injected["lhs"], injected["rhs"])
    for batch in groups.values():
        ev = _batched_chain(batch, fam, params)
        gaps = np.where(np.isnan(ev[2]), np.inf, ev[2])
        k = int(np.argmax(gaps))
        if worst is None or gaps[k] > worst[0]:
            worst = (gaps[k], batch[k], ev[0][k], ev[1][k])
    gap, r, lhs, rhs = worst
    witness = {"r": np.asarray(r).tolist()}
    if injected is not None:
        witness["injected"] = injected
    return _report("A4", config, witness, lhs, rhs, gap, config.seed)


def _batched_chain(batch, fam, params):
    def one(b):
        ev = chain_rule(b, fam, params)
        return np.stack([np.atleast_1d(ev.joint_entropy), np.atleast_1d(ev.combined), np.atleast_1d(ev.gap)])

    try:
        return one(batch)
    except DomainError:
        cols = []
        for r in batch:
            try:
                cols.append(one(r[None])[:, 0])
            except DomainError:
                cols.append(np.array([np.nan, np.nan, np.nan]))
        return np.stack(cols, axis=1)


def check_composability(config: AuditSuiteConfig, pairs: Optional[Sequence] = None) -> AuditReport:
    """Worst gap of ``D(P * Q) = D(P) o D(Q)`` over independent pairs."""
    fam, params = config.family, config.params
    if pairs is not None:
        groups = {}
        for P, Q in pairs:
            p, q = as_probs(P), as_probs(Q)
            groups.setdefault((p.size, q.size), ([], []))
            groups[(p.size, q.size)][0].append(p)
            groups[(p.size, q.size)][1].append(q)
        groups = {k: (np.stack(a), np.stack(b)) for k, (a, b) in groups.items()}
    else:
        rng = _rng(config.seed, "C3")
        ns = rng.integers(2, config.max_n + 1, size=config.trials)
        ms = rng.integers(2, config.max_m + 1, size=config.trials)
        groups = {}
        for n, m in sorted({(int(a), int(b)) for a, b in zip(ns, ms)}):
            count = int(np.sum((ns == n) & (ms == m)))
            groups[(n, m)] = (_mixed_simplex(rng, count, n), _mixed_simplex(rng, count, m))
    worst = None
    for (n, m), (P, Q) in groups.items():
        joint = (P[:, :, None] * Q[:, None, :]).reshape(P.shape[0], n * m)
        lhs = entropy(fam, joint, params)
        rhs = compose(fam, entropy(fam, P, params), entropy(fam, Q, params), params.q)
        gap = np.abs(lhs - rhs)
        k = int(np.argmax(gap))
        if worst is None or gap[k] > worst[0]:
            worst = (gap[k], P[k], Q[k], lhs[k], rhs[k])
    gap, p, q, lhs, rhs = worst
    return _report("C3", config, {"P": p.tolist(), "Q": q.tolist()}, lhs, rhs, gap, config.seed)


def check_normalization(family, params: EntropyParams, tolerance: float = DEFAULT_TOLERANCE) -> AuditReport:
    """Compare the entropy of one fair bit with ``h(1)`` (``1`` for additive families)."""
    family = EntropyFamily.parse(family)
    value = entropy(family, (0.5, 0.5), params)
    target = normalization_target(family, params)
    config = AuditSuiteConfig(family=family, params=params, tolerance=tolerance)
    axiom = "C4" if family is EntropyFamily.GClass else "A5"
    return _report(axiom, config, {"p": [0.5, 0.5]}, value, target, abs(value - target))


def check_info_additivity(
    q: float, trials: int = 1000, seed: int = 42, tolerance: float = 1e-10
) -> AuditReport:
    """``I(ab) = I(a) (+)_q I(b)`` on sampled pairs, plus strict decrease of ``I`` on a grid.

    The additivity gap is relative, ``|lhs - rhs| / (1 + |lhs|)``, because
    ``I`` is unbounded near ``p = 0`` for q < 1.
    """
    params = EntropyParams(q=q)
    rng = _rng(seed, "C1")
    a = np.concatenate([[1.0, 0.5, 1.0], 1.0 - rng.random(trials)])
    b = np.concatenate([[0.3, 0.5, 1.0], 1.0 - rng.random(trials)])
    lhs = h_map(-np.log2(a * b), q)
    rhs = q_add(h_map(-np.log2(a), q), h_map(-np.log2(b), q), q)
    rel = np.abs(lhs - rhs) / (1.0 + np.abs(lhs))
    k = int(np.argmax(rel))
    grid = np.linspace(1e-3, 1.0, 1000)
    rise = np.max(np.diff(h_map(-np.log2(grid), q)))
    gap = max(float(rel[k]), max(0.0, float(rise)))
    config = AuditSuiteConfig(family=EntropyFamily.JizbaKorbel, params=params, tolerance=tolerance)
    rep = _report("C1", config, {"a": float(a[k]), "b": float(b[k])}, lhs[k], rhs[k], gap, seed)
    return replace(rep, family="info-content")


def reproduce_counterexample() -> AuditReport:
    """The q = 2 joint on which the Jizba-Korbel chain rule fails.

    In surprisal space the joint gives 4/3 while marginal plus escort
    conditional gives 3/2; the deformed values are carried in the witness.
    """
    q = COUNTEREXAMPLE_Q
    J = make_joint(COUNTEREXAMPLE_JOINT)
    lhs = aczel_daroczy(J.flatten(), q)
    rhs = aczel_daroczy(J.marginal, q) + conditional_aczel_daroczy(J, q)
    if abs(lhs - 4 / 3) > 1e-12 or abs(rhs - 3 / 2) > 1e-12:
        raise RuntimeError(f"counterexample drifted: lhs={lhs!r}, rhs={rhs!r}")
    d_lhs, d_rhs = h_map(lhs, q), h_map(rhs, q)
    witness = {
        "r": J.r.tolist(),
        "escort_r": escort_weights(J.r.ravel(), q).reshape(J.shape).tolist(),
        "marginal": J.marginal.probs.tolist(),
        "conditionals": [c.probs.tolist() for c in J.conditionals],
        "d_lhs": d_lhs,
        "d_rhs": d_rhs,
        "d_gap": abs(d_lhs - d_rhs),
    }
    config = AuditSuiteConfig(family=EntropyFamily.JizbaKorbel, params=EntropyParams(q=q))
    return _report("A4", config, witness, lhs, rhs, abs(lhs - rhs))


def counterexample_exact() -> tuple:
    """Both sides of the counterexample in exact rational arithmetic (log2 of powers of 2)."""
    r = [[Fraction(1, 4), Fraction(1, 4)], [Fraction(1, 2), Fraction(0)]]
    log2 = {Fraction(1, 4): -2, Fraction(1, 2): -1, Fraction(1): 0}
    sq = [[x * x for x in row] for row in r]
    z = sum(sum(row) for row in sq)
    lhs = -sum(sq[i][j] / z * log2[r[i][j]] for i in range(2) for j in range(2) if r[i][j])
    p = [sum(row) for row in r]
    wp = [x * x / sum(y * y for y in p) for x in p]
    marg = -sum(w * log2[x] for w, x in zip(wp, p))
    cond = Fraction(0)
    for i in range(2):
        c = [x / p[i] for x in r[i]]
        wc = [x * x / sum(y * y for y in c) for x in c]
        cond += wp[i] * -sum(w * log2[x] for w, x in zip(wc, c) if x)
    return lhs, marg + cond


def run_audit(config: AuditSuiteConfig, axioms: Sequence[str] = ("all",)) -> list:
    """Run the requested checks (``A2, A3, A4, A5, C1, C3, C4`` or ``all``) for one configuration."""
    wanted = {a.upper() for a in axioms}
    fam = config.family
    if "ALL" in wanted:
        wanted = {"A2", "A3", "C3", "A5" if fam is not EntropyFamily.GClass else "C4", "C1"}
        if fam in CHAIN_FAMILIES:
            wanted.add("A4")
    unknown = wanted - set(_AXIOM_KEYS)
    if unknown:
        raise InvalidParameter(f"unknown axiom(s) {sorted(unknown)}")
    reports = []
    for axiom in sorted(wanted):
        if axiom == "A2":
            reports.append(check_maximality(config))
        elif axiom == "A3":
            reports.append(check_expandability(config))
        elif axiom == "A4":
            reports.append(check_chain_rule(config))
        elif axiom == "C3":
            reports.append(check_composability(config))
        elif axiom in ("A5", "C4"):
            rep = check_normalization(fam, config.params, config.tolerance)
            reports.append(replace(rep, axiom_id=axiom))
        elif axiom == "C1":
            reports.append(check_info_additivity(config.params.q, config.trials, config.seed))
    return reports


def search_violations(
    config: AuditSuiteConfig,
    grid: Optional[Sequence[EntropyParams]] = None,
    joints: Optional[Sequence] = None,
    pairs: Optional[Sequence] = None,
) -> list:
    """Violated chain-rule and composability reports over ``grid``, largest gap first."""
    found = []
    for params in grid if grid is not None else [config.params]:
        cfg = replace(config, params=params)
        checks = []
        if cfg.family in CHAIN_FAMILIES:
            checks.append(check_chain_rule(cfg, joints))
        checks.append(check_composability(cfg, pairs))
        found.extend(r for r in checks if not r.holds)
    return sorted(found, key=lambda r: -r.gap)
