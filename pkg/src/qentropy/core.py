"""Probability distributions, joint distributions and the shared parameter space."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

NORMALIZATION_TOL = 1e-9


class EntropyError(ValueError):
    """Base class for every input or domain error raised by the package."""


class EmptyInput(EntropyError):
    pass


class NegativeProbability(EntropyError):
    pass


class NotNormalized(EntropyError):
    pass


class RaggedMatrix(EntropyError):
    pass


class InvalidParameter(EntropyError):
    pass


class DomainError(EntropyError):
    """A deformation map was evaluated outside the set where it is defined."""


class LengthMismatch(EntropyError):
    pass


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Distribution:
    """A point of the probability simplex.

    Construct through :func:`make_distribution`; direct construction
    validates strictly (no renormalisation).
    """

    probs: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.probs, dtype=float)
        if p.ndim != 1 or p.size == 0:
            raise EmptyInput("distribution must be a nonempty 1-d sequence")
        if not np.all(np.isfinite(p)):
            raise EntropyError("distribution entries must be finite")
        if np.any(p < 0):
            k = int(np.argmax(p < 0))
            raise NegativeProbability(f"p[{k}] = {float(p[k])!r} is negative")
        s = p.sum()
        if abs(s - 1.0) > NORMALIZATION_TOL:
            raise NotNormalized(f"entries sum to {float(s)!r}, not 1")
        object.__setattr__(self, "probs", _frozen(p))

    def __len__(self):
        return self.probs.size

    def __iter__(self):
        return iter(self.probs.tolist())

    def __getitem__(self, k):
        return float(self.probs[k])

    def __eq__(self, other):
        if not isinstance(other, Distribution):
            return NotImplemented
        return np.array_equal(self.probs, other.probs)

    def __repr__(self):
        return f"Distribution({', '.join(repr(float(x)) for x in self.probs)})"

    @property
    def n(self) -> int:
        return self.probs.size

    def to_json(self) -> dict:
        return {"p": self.probs.tolist()}


def make_distribution(values: Sequence[float], normalize: bool = False) -> Distribution:
    """Validate ``values`` as a distribution, optionally dividing by their sum."""
    if isinstance(values, Distribution):
        return values
    p = np.asarray(values, dtype=float)
    if p.size == 0:
        raise EmptyInput("no probabilities given")
    if p.ndim != 1:
        raise EntropyError("expected a flat sequence of probabilities")
    if np.any(p < 0):
        k = int(np.argmax(p < 0))
        raise NegativeProbability(f"p[{k}] = {float(p[k])!r} is negative")
    if normalize:
        s = p.sum()
        if not s > 0 or not np.isfinite(s):
            raise NotNormalized(f"cannot normalise entries with sum {float(s)!r}")
        p = p / s
    return Distribution(p)


def as_probs(P) -> np.ndarray:
    """Probability array of a Distribution, or of a validated array-like.

    Array-likes may carry leading batch axes; the last axis indexes outcomes.
    """
    if isinstance(P, Distribution):
        return P.probs
    p = np.asarray(P, dtype=float)
    if p.ndim == 1:
        return make_distribution(p).probs
    if p.ndim == 0 or p.shape[-1] == 0:
        raise EmptyInput("no probabilities given")
    if np.any(p < 0):
        raise NegativeProbability("negative probability in batch")
    if np.any(np.abs(p.sum(axis=-1) - 1.0) > NORMALIZATION_TOL):
        raise NotNormalized("batch rows do not sum to 1")
    return p


def uniform(n: int) -> Distribution:
    return Distribution(np.full(n, 1.0 / n))


@dataclass(frozen=True, eq=False)
class JointDistribution:
    """An n x m joint matrix with its row marginal and row conditionals.

    ``conditionals[i]`` is ``None`` where the marginal ``p_i`` is zero.
    Row-major flattening (:meth:`flatten`) is the canonical map onto a
    distribution of length n*m.
    """

    r: np.ndarray
    marginal: Distribution = field(init=False)
    conditionals: tuple = field(init=False)

    def __post_init__(self):
        r = np.asarray(self.r, dtype=float)
        if r.ndim != 2 or r.size == 0:
            raise EmptyInput("joint must be a nonempty matrix")
        if np.any(r < 0):
            i, j = np.argwhere(r < 0)[0]
            raise NegativeProbability(f"r[{i}][{j}] = {float(r[i, j])!r} is negative")
        s = r.sum()
        if abs(s - 1.0) > NORMALIZATION_TOL:
            raise NotNormalized(f"joint entries sum to {float(s)!r}, not 1")
        r = _frozen(r)
        p = r.sum(axis=1)
        # marginal rows may drift by rounding; the joint total already passed the check
        marginal = Distribution(p)
        conds = tuple(Distribution(r[i] / p[i]) if p[i] > 0 else None for i in range(r.shape[0]))
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "marginal", marginal)
        object.__setattr__(self, "conditionals", conds)

    @property
    def shape(self):
        return self.r.shape

    def flatten(self) -> Distribution:
        return Distribution(self.r.ravel())

    def defined_rows(self) -> list:
        return [i for i, c in enumerate(self.conditionals) if c is not None]

    def to_json(self) -> dict:
        return {"r": self.r.tolist()}


def make_joint(matrix) -> JointDistribution:
    if isinstance(matrix, JointDistribution):
        return matrix
    if isinstance(matrix, np.ndarray):
        rows = matrix
    else:
        rows = list(matrix)
        if not rows:
            raise EmptyInput("joint matrix has no rows")
        lengths = set()
        for row in rows:
            try:
                lengths.add(len(row))
            except TypeError:
                raise RaggedMatrix("joint matrix rows must be sequences") from None
        if len(lengths) != 1:
            raise RaggedMatrix(f"rows have differing lengths {sorted(lengths)}")
    return JointDistribution(np.asarray(rows, dtype=float))


def direct_product(P, Q) -> Distribution:
    """Row-major direct product ``(p1 q1, p1 q2, ..., pn qm)``."""
    p, q = as_probs(P), as_probs(Q)
    return Distribution(np.outer(p, q).ravel())


def product_joint(P, Q) -> JointDistribution:
    """The direct product as a joint matrix; every conditional row equals Q."""
    return JointDistribution(np.outer(as_probs(P), as_probs(Q)))


def escort(P, q: float) -> Distribution:
    """Escort distribution ``p_k^q / sum_i p_i^q``, with ``0^q = 0``."""
    return Distribution(escort_weights(as_probs(P), q))


def escort_weights(p: np.ndarray, q: float) -> np.ndarray:
    """Escort weights along the last axis of an already valid probability array."""
    if not q > 0:
        raise InvalidParameter(f"escort exponent must be > 0, got {q!r}")
    if q == 1:
        return np.array(p, dtype=float)
    # dividing by the largest mass first keeps p^q away from overflow/underflow
    w = np.power(p / p.max(axis=-1, keepdims=True), q)
    return w / w.sum(axis=-1, keepdims=True)


def expand(P) -> Distribution:
    """Append a single zero-probability outcome."""
    return Distribution(np.append(as_probs(P), 0.0))


@dataclass(frozen=True)
class EntropyParams:
    """Deformation ``q``, scale exponent ``tau``, G-class ``lam`` and optional escort ``alpha``."""

    q: float = 1.0
    tau: float = -1.0
    lam: float = 0.0
    alpha: Optional[float] = None

    def __post_init__(self):
        for name in ("q", "tau", "lam"):
            v = getattr(self, name)
            if not np.isfinite(v):
                raise InvalidParameter(f"{name} must be finite, got {v!r}")
            object.__setattr__(self, name, float(v))
        if not self.q > 0:
            raise InvalidParameter(f"q must be > 0, got {self.q!r}")
        if not self.tau < 0:
            raise InvalidParameter(f"tau must be < 0, got {self.tau!r}")
        if self.alpha is not None:
            if not (np.isfinite(self.alpha) and self.alpha > 0):
                raise InvalidParameter(f"alpha must be > 0, got {self.alpha!r}")
            object.__setattr__(self, "alpha", float(self.alpha))

    @property
    def escort_exponent(self) -> float:
        return self.q if self.alpha is None else self.alpha

    def to_json(self) -> dict:
        return {"q": self.q, "tau": self.tau, "lambda": self.lam, "alpha": self.alpha}


def _json_number(x):
    x = float(x)
    return x if np.isfinite(x) else None


@dataclass(frozen=True)
class AuditReport:
    """Outcome of a single axiom check.

    ``gap`` is ``|lhs - rhs|`` for identities or the largest violation
    magnitude for inequalities; ``verdict`` is derived from it.
    """

    axiom_id: str
    family: str
    params: EntropyParams
    witness: dict
    lhs: float
    rhs: float
    gap: float
    tolerance: float
    seed: Optional[int] = None

    @property
    def verdict(self) -> str:
        return "holds" if self.gap <= self.tolerance else "violated"

    @property
    def holds(self) -> bool:
        return self.verdict == "holds"

    def to_json(self) -> dict:
        return {
            "axiom": self.axiom_id,
            "family": self.family,
            "params": self.params.to_json(),
            "verdict": self.verdict,
            "gap": _json_number(self.gap),
            "lhs": _json_number(self.lhs),
            "rhs": _json_number(self.rhs),
            "witness": self.witness,
            "tolerance": self.tolerance,
            "seed": self.seed,
        }
