"""Escort-weighted conditional entropies and the generalized chain rule.

A conditional entropy is the quasi-linear mean of the row entropies
``D(Q|i)`` under the escort of the marginal, with exponent ``alpha``
(default ``q``). Rows with zero marginal carry zero weight and are skipped.

Joints are JointDistribution objects, n x m matrices, or stacks of
matrices of shape (..., n, m); stacked input gives array results.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    NORMALIZATION_TOL,
    EntropyParams,
    InvalidParameter,
    JointDistribution,
    NotNormalized,
    NegativeProbability,
    escort_weights,
    make_joint,
)
from .entropies import EntropyFamily, aczel_daroczy, compose, corrected, entropy, jizba_korbel, nath, shannon
from .qalgebra import LN2, DeformationMap, MapKind, is_unit

CHAIN_FAMILIES = (
    EntropyFamily.Shannon,
    EntropyFamily.Nath,
    EntropyFamily.Corrected,
    EntropyFamily.Tsallis,
    EntropyFamily.JizbaKorbel,
    EntropyFamily.AczelDaroczy,
)


@dataclass(frozen=True)
class ChainRuleEvaluation:
    joint_entropy: float
    marginal_entropy: float
    conditional_entropy: float
    combined: float

    @property
    def gap(self):
        return abs(self.joint_entropy - self.combined)

    def to_json(self) -> dict:
        return {
            "joint_entropy": float(self.joint_entropy),
            "marginal_entropy": float(self.marginal_entropy),
            "conditional_entropy": float(self.conditional_entropy),
            "combined": float(self.combined),
            "gap": float(self.gap),
        }


def _matrix(J) -> np.ndarray:
    if isinstance(J, JointDistribution):
        return J.r
    r = np.asarray(J, dtype=float) if isinstance(J, np.ndarray) else None
    if r is None or r.ndim == 2:
        return make_joint(J).r
    if r.ndim < 2:
        raise InvalidParameter("a joint needs at least two axes")
    if np.any(r < 0):
        raise NegativeProbability("negative probability in joint batch")
    if np.any(np.abs(r.sum(axis=(-2, -1)) - 1.0) > NORMALIZATION_TOL):
        raise NotNormalized("joint batch entries do not sum to 1")
    return r


def _split(r):
    """Marginal ``p_i`` and conditional rows; undefined rows become (1, 0, ..., 0)."""
    p = r.sum(axis=-1)
    defined = p > 0
    unit = np.zeros(r.shape[-1])
    unit[0] = 1.0
    cond = np.where(defined[..., None], r / np.where(defined, p, 1.0)[..., None], unit)
    return p, cond


def _out(x):
    return float(x) if np.ndim(x) == 0 else x


def _mean(values, w, mapping):
    # zero-weight slots get a defined stand-in so the map never sees them
    stand_in = np.take_along_axis(values, np.argmax(w, axis=-1)[..., None], axis=-1)
    v = np.where(w > 0, values, stand_in)
    return _out(mapping.inverse(np.sum(w * mapping(v), axis=-1)))


def _conditional_mean(J, row_entropy, alpha, mapping):
    p, cond = _split(_matrix(J))
    return _mean(row_entropy(cond), escort_weights(p, alpha), mapping)


def conditional_corrected(J, params: EntropyParams):
    return _conditional_mean(
        J, lambda c: corrected(c, params), params.escort_exponent, DeformationMap(MapKind.Fh, params)
    )


def conditional_nath(J, params: EntropyParams):
    return _conditional_mean(
        J, lambda c: nath(c, params), params.escort_exponent, DeformationMap(MapKind.F, params)
    )


def conditional_nath_closed_form(J, params: EntropyParams):
    """``tau/(q-1) log2 sum_i w_i sum_j q_{j|i}^q`` evaluated directly from the rows."""
    q, tau = params.q, params.tau
    p, cond = _split(_matrix(J))
    w = escort_weights(p, params.escort_exponent)
    if is_unit(q):
        xlogx = np.sum(cond * np.log2(np.where(cond > 0, cond, 1.0)), axis=-1)
        return _out(tau * np.sum(w * xlogx, axis=-1))
    s = np.sum(w * np.sum(cond**q, axis=-1), axis=-1)
    return _out(tau * np.log(s) / ((q - 1.0) * LN2))


def conditional_shannon(J):
    p, cond = _split(_matrix(J))
    return _out(np.sum(p * shannon(cond), axis=-1))


def conditional_aczel_daroczy(J, q: float, alpha: float = None):
    """Escort-weighted arithmetic mean of the row Aczel-Daroczy entropies."""
    p, cond = _split(_matrix(J))
    w = escort_weights(p, q if alpha is None else alpha)
    return _out(np.sum(w * aczel_daroczy(cond, q), axis=-1))


def conditional_jizba_korbel(J, params: EntropyParams, kind: MapKind = MapKind.HInv):
    """Jizba-Korbel row entropies averaged with the map ``kind``.

    The default ``h^-1`` map (any map affine in it gives the same mean) is
    the choice implied by assuming the entropy is a mean of deformed
    surprisals; it reduces to the arithmetic Aczel-Daroczy conditional in
    surprisal space. ``MapKind.Fh`` reuses the corrected family's mean.
    Neither choice satisfies the chain rule for q != 1.
    """
    return _conditional_mean(
        J, lambda c: jizba_korbel(c, params.q), params.escort_exponent, DeformationMap(kind, params)
    )


def conditional_entropy(J, family, params: EntropyParams):
    family = EntropyFamily.parse(family)
    if family is EntropyFamily.Shannon:
        return conditional_shannon(J)
    if family is EntropyFamily.Nath:
        return conditional_nath(J, params)
    if family is EntropyFamily.Corrected:
        return conditional_corrected(J, params)
    if family is EntropyFamily.Tsallis:
        return conditional_corrected(J, EntropyParams(q=params.q, tau=-1.0, alpha=params.alpha))
    if family is EntropyFamily.JizbaKorbel:
        return conditional_jizba_korbel(J, params)
    if family is EntropyFamily.AczelDaroczy:
        return conditional_aczel_daroczy(J, params.q, params.alpha)
    raise InvalidParameter(f"no conditional form for the {family.value} family")


def chain_rule(J, family, params: EntropyParams) -> ChainRuleEvaluation:
    """Both sides of ``D(PQ) = D(P) o D(Q|P)`` with the family's composition law."""
    family = EntropyFamily.parse(family)
    if family not in CHAIN_FAMILIES:
        raise InvalidParameter(f"no chain rule for the {family.value} family")
    r = _matrix(J)
    flat = r.reshape(r.shape[:-2] + (-1,))
    joint = entropy(family, flat, params)
    marginal = entropy(family, r.sum(axis=-1), params)
    cond = conditional_entropy(r, family, params)
    return ChainRuleEvaluation(joint, marginal, cond, compose(family, marginal, cond, params.q))
