"""Deformed addition, the deformation maps h, f, f_h, g_h, and quasi-linear means.

All logarithms are base 2. Every map has a q = 1 branch, selected when
``|q - 1| <= UNIT_Q_TOL``; away from it the q != 1 formulas are evaluated
through ``expm1``/``log1p`` so they stay accurate as q approaches 1.

``h`` at q = 1 is ``x ln 2``, the limit of ``(2^((1-q) x) - 1) / (1 - q)``;
the identity would make every h-deformed entropy jump by a factor ln 2
there.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .core import DomainError, EntropyParams, LengthMismatch, as_probs

LN2 = np.log(2.0)
UNIT_Q_TOL = 1e-8


def is_unit(q: float) -> bool:
    return abs(q - 1.0) <= UNIT_Q_TOL


def _out(x):
    return float(x) if np.ndim(x) == 0 else x


def q_add(u, v, q: float):
    """``u (+)_q v = u + v + (1 - q) u v``."""
    return u + v + (1.0 - q) * u * v


def h_map(x, q: float):
    """``(2^((1-q) x) - 1) / (1 - q)``, continued by ``x ln 2`` at q = 1."""
    if is_unit(q):
        return _out(LN2 * np.asarray(x, dtype=float))
    return _out(np.expm1((1.0 - q) * LN2 * np.asarray(x, dtype=float)) / (1.0 - q))


def h_inv(y, q: float):
    if is_unit(q):
        return _out(np.asarray(y, dtype=float) / LN2)
    t = (1.0 - q) * np.asarray(y, dtype=float)
    if np.any(~(t > -1.0)):
        raise DomainError(f"h^-1 needs (1-q)y + 1 > 0 (q={q}, y={y})")
    return _out(np.log1p(t) / ((1.0 - q) * LN2))


def f_map(x, params: EntropyParams):
    """``2^((q-1) x / tau)``; ``tau x`` at q = 1."""
    q, tau = params.q, params.tau
    x = np.asarray(x, dtype=float)
    if is_unit(q):
        return _out(tau * x)
    return _out(np.exp2((q - 1.0) * x / tau))


def f_inv(y, params: EntropyParams):
    q, tau = params.q, params.tau
    y = np.asarray(y, dtype=float)
    if is_unit(q):
        return _out(y / tau)
    if np.any(~(y > 0)):
        raise DomainError(f"f^-1 needs y > 0, got {y}")
    return _out(tau * np.log2(y) / (q - 1.0))


def _shifted_log(x, q):
    # log((1-q) x + 1), defined for (1-q) x > -1
    t = (1.0 - q) * np.asarray(x, dtype=float)
    if np.any(~(t > -1.0)):
        raise DomainError(f"need (1-q)x + 1 > 0 (q={q}, x={x})")
    return np.log1p(t)


def f_h_map(x, params: EntropyParams):
    """``((1-q) x + 1)^(-1/tau)``; ``tau x`` at q = 1."""
    q, tau = params.q, params.tau
    if is_unit(q):
        return _out(tau * np.asarray(x, dtype=float))
    return _out(np.exp(-_shifted_log(x, q) / tau))


def f_h_inv(y, params: EntropyParams):
    q, tau = params.q, params.tau
    y = np.asarray(y, dtype=float)
    if is_unit(q):
        return _out(y / tau)
    if np.any(~(y > 0)):
        raise DomainError(f"f_h^-1 needs y > 0, got {y}")
    return _out(np.expm1(-tau * np.log(y)) / (1.0 - q))


def g_h_map(x, params: EntropyParams):
    """``((1-q) x + 1)^(1/tau)``; ``tau x`` at q = 1."""
    q, tau = params.q, params.tau
    if is_unit(q):
        return _out(tau * np.asarray(x, dtype=float))
    return _out(np.exp(_shifted_log(x, q) / tau))


def g_h_inv(y, params: EntropyParams):
    q, tau = params.q, params.tau
    y = np.asarray(y, dtype=float)
    if is_unit(q):
        return _out(y / tau)
    if np.any(~(y > 0)):
        raise DomainError(f"g_h^-1 needs y > 0, got {y}")
    return _out(np.expm1(tau * np.log(y)) / (1.0 - q))


class MapKind(enum.Enum):
    H = "h"
    HInv = "h_inv"
    F = "f"
    FInv = "f_inv"
    Fh = "f_h"
    FhInv = "f_h_inv"
    Gh = "g_h"
    GhInv = "g_h_inv"


# kind -> (forward, inverse); h-type maps only take q
_MAPS = {
    MapKind.H: (lambda x, p: h_map(x, p.q), lambda y, p: h_inv(y, p.q)),
    MapKind.HInv: (lambda x, p: h_inv(x, p.q), lambda y, p: h_map(y, p.q)),
    MapKind.F: (f_map, f_inv),
    MapKind.FInv: (f_inv, f_map),
    MapKind.Fh: (f_h_map, f_h_inv),
    MapKind.FhInv: (f_h_inv, f_h_map),
    MapKind.Gh: (g_h_map, g_h_inv),
    MapKind.GhInv: (g_h_inv, g_h_map),
}


@dataclass(frozen=True)
class DeformationMap:
    """One of the package's strictly monotone maps, bound to its parameters."""

    kind: MapKind
    params: EntropyParams

    def __call__(self, x):
        return _MAPS[self.kind][0](x, self.params)

    def inverse(self, y):
        return _MAPS[self.kind][1](y, self.params)


def quasilinear_mean(values, weights, mapping: DeformationMap):
    """Weighted quasi-linear mean ``phi^-1(sum_i w_i phi(v_i))``.

    Entries with zero weight are dropped before the map is applied, so
    their values may be ``None`` or NaN.
    """
    w = as_probs(weights)
    if len(values) != w.size:
        raise LengthMismatch(f"{len(values)} values against {w.size} weights")
    keep = np.flatnonzero(w > 0)
    v = np.array([values[i] for i in keep], dtype=float)
    return float(mapping.inverse(np.dot(w[keep], mapping(v))))
