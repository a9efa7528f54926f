"""Entropy families.

Every function takes a Distribution or a probability array whose last axis
indexes outcomes (leading axes are a batch).

Zero-probability outcomes are skipped everywhere: ``0 log 0 = 0`` and a
zero mass has zero escort weight, which makes every family exactly
expandable.
"""

from __future__ import annotations

import enum

import numpy as np

from .core import DomainError, EntropyParams, InvalidParameter, as_probs, escort_weights
from .qalgebra import LN2, h_map, is_unit, q_add


class EntropyFamily(enum.Enum):
    Shannon = "shannon"
    Nath = "nath"
    Corrected = "corrected"
    JizbaKorbel = "jizba-korbel"
    AczelDaroczy = "aczel-daroczy"
    Tsallis = "tsallis"
    GClass = "g-class"

    @classmethod
    def parse(cls, name) -> "EntropyFamily":
        if isinstance(name, cls):
            return name
        key = str(name).strip().lower().replace("_", "-")
        for fam in cls:
            if key in (fam.value, fam.name.lower(), fam.value.replace("-", "")):
                return fam
        raise InvalidParameter(f"unknown entropy family {name!r}")

    @property
    def additive(self) -> bool:
        """Whether the family composes with ``+`` rather than ``(+)_q``."""
        return self in (EntropyFamily.Shannon, EntropyFamily.Nath, EntropyFamily.AczelDaroczy)


def _check_q(q):
    if not q > 0:
        raise InvalidParameter(f"q must be > 0, got {q!r}")


def _out(x):
    return float(x) if np.ndim(x) == 0 else x


def _log(p):
    # natural log on the support, 0 elsewhere; callers weight zero masses by 0
    return np.log(np.where(p > 0, p, 1.0))


def _log_power_sum(p, q):
    """Natural log of ``sum p_k^q`` along the last axis.

    Written as ``log1p(sum p (p^(q-1) - 1))`` so the q -> 1 limit keeps
    its relative accuracy.
    """
    return np.log1p(np.sum(p * np.expm1((q - 1.0) * _log(p)), axis=-1))


def _xlog2x(p):
    return np.sum(p * _log(p), axis=-1) / LN2


def shannon(P) -> float:
    return _out(-_xlog2x(as_probs(P)))


def nath(P, params: EntropyParams) -> float:
    """``tau/(q-1) log2 sum p^q``: a Renyi entropy of order q scaled by ``-tau``."""
    p = as_probs(P)
    q, tau = params.q, params.tau
    if is_unit(q):
        return _out(tau * _xlog2x(p))
    return _out(tau * _log_power_sum(p, q) / ((q - 1.0) * LN2))


def corrected(P, params: EntropyParams) -> float:
    """``((sum p^q)^(-tau) - 1) / (1 - q)``, the class closed under the escort chain rule.

    At q = 1 this is ``tau sum p ln p``, in nats, the limit of the formula.
    """
    p = as_probs(P)
    q, tau = params.q, params.tau
    if is_unit(q):
        return _out(tau * LN2 * _xlog2x(p))
    return _out(np.expm1(-tau * _log_power_sum(p, q)) / (1.0 - q))


def tsallis(P, q: float) -> float:
    _check_q(q)
    return corrected(P, EntropyParams(q=q, tau=-1.0))


def aczel_daroczy(P, q: float) -> float:
    """Escort-averaged surprisal ``-sum p_k^(q) log2 p_k``, in bits."""
    _check_q(q)
    p = as_probs(P)
    w = escort_weights(p, q)
    return _out(-np.sum(w * _log(p), axis=-1) / LN2)


def jizba_korbel(P, q: float) -> float:
    return h_map(aczel_daroczy(P, q), q)


def jizba_korbel_product_form(P, q: float) -> float:
    """``(prod p_k^((q-1) p_k^(q)) - 1) / (1 - q)``; direct evaluation, q != 1 only."""
    _check_q(q)
    p = as_probs(P)
    w = escort_weights(p, q)
    base = np.where(p > 0, p, 1.0)
    return _out((np.prod(base ** ((q - 1.0) * w), axis=-1) - 1.0) / (1.0 - q))


def _escort_log_mean(p, w, lam):
    """``log2 sum w p^(-lam)`` along the last axis."""
    s = -lam * _log(p)
    on = w > 0
    small = np.all(np.abs(np.where(on, s, 0.0)) < 1.0, axis=-1)
    # relative to 1 when every |lam log p| is small, log-sum-exp otherwise
    near = np.log1p(np.sum(w * np.expm1(np.clip(s, -1.0, 1.0)), axis=-1))
    m = np.max(np.where(on, s, -np.inf), axis=-1, keepdims=True)
    far = m[..., 0] + np.log(np.sum(w * np.exp(np.where(on, s - m, -np.inf)), axis=-1))
    return np.where(small, near, far) / LN2


def g_class(P, q: float, lam: float = 0.0) -> float:
    """``h((1/lam) log2 sum p_k^(q) p_k^(-lam))``; the Jizba-Korbel entropy at ``lam = 0``."""
    _check_q(q)
    if not np.isfinite(lam):
        raise InvalidParameter(f"lambda must be finite, got {lam!r}")
    if lam == 0:
        return jizba_korbel(P, q)
    p = as_probs(P)
    w = escort_weights(p, q)
    return h_map(_out(_escort_log_mean(p, w, lam)) / lam, q)


def info_content(p: float, q: float) -> float:
    """Deformed surprisal ``h(-log2 p)`` of an event with probability p."""
    if not 0 < p <= 1:
        raise DomainError(f"information content needs p in (0, 1], got {p!r}")
    return float(h_map(-np.log2(p), q))


def entropy(family, P, params: EntropyParams) -> float:
    """Evaluate ``family`` on ``P``; each family reads only the parameters it uses."""
    family = EntropyFamily.parse(family)
    if family is EntropyFamily.Shannon:
        return shannon(P)
    if family is EntropyFamily.Nath:
        return nath(P, params)
    if family is EntropyFamily.Corrected:
        return corrected(P, params)
    if family is EntropyFamily.Tsallis:
        return tsallis(P, params.q)
    if family is EntropyFamily.AczelDaroczy:
        return aczel_daroczy(P, params.q)
    if family is EntropyFamily.JizbaKorbel:
        return jizba_korbel(P, params.q)
    return g_class(P, params.q, params.lam)


def compose(family, a: float, b: float, q: float) -> float:
    """The family's law for independent systems: ``+`` or ``(+)_q``."""
    family = EntropyFamily.parse(family)
    if family.additive:
        return a + b
    return q_add(a, b, q)


def normalization_target(family, params: EntropyParams) -> float:
    """Entropy a normalised family assigns to one fair bit."""
    family = EntropyFamily.parse(family)
    return 1.0 if family.additive else float(h_map(1.0, params.q))
