"""Decoherence maps and the reduced 2x2 machinery on Stokes subplanes.

Decoherence suppresses the beam cross-correlation s12, i.e. the (s2,
s3) Stokes components, while leaving the intensities alone. Two forms
appear here: `decoherence4`, the group-theoretic diagonal
diag(e^l, e^l, e^-l, e^-l), which is not a Lorentz transform for any
l > 0, and the physical channel `decohere_channel`, its e^-l multiple
diag(1, 1, e^-2l, e^-2l), which keeps states physical and never
increases purity.

The four Stokes components also split into the pairs V_A = (s1, s2)
and V_B = (s0, s3); on such a pair the 2x2 real unimodular matrices
d_a, r_a, d_b act, and the module carries the two standard
factorizations of that group: the Iwasawa form rotation * diagonal *
upper shear, and the squeeze-rotation (Wigner) form rotation *
diagonal * rotation whose angle sum is the Wigner rotation angle.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .states import PhysicsError, StokesVector, Transform4

__all__ = [
    "DecoherenceParam",
    "SubVectorA",
    "SubVectorB",
    "decoherence4",
    "decohere_channel",
    "split_subvectors",
    "recombine",
    "d_a",
    "r_a",
    "d_b",
    "IwasawaFactors",
    "iwasawa_decompose",
    "iwasawa_recompose",
    "WignerFactors",
    "wigner_decompose",
    "wigner_recompose",
]


@dataclass(frozen=True)
class DecoherenceParam:
    """Nonnegative decoherence exponent for the physical channel."""

    lam: float

    def __post_init__(self):
        lam = float(self.lam)
        if not math.isfinite(lam):
            raise PhysicsError("lambda must be finite")
        if lam < 0.0:
            raise PhysicsError("lambda must be nonnegative")
        object.__setattr__(self, "lam", lam)


class SubVectorA(NamedTuple):
    s1: float
    s2: float


class SubVectorB(NamedTuple):
    s0: float
    s3: float


def decoherence4(lam) -> Transform4:
    """diag(e^l, e^l, e^-l, e^-l) on Stokes vectors.

    Amplifies (s0, s1) as it suppresses (s2, s3), so it lies outside
    the Lorentz group for every l != 0 (the transform is flagged
    accordingly). It commutes with phase4. The physical, intensity
    preserving channel is its e^-l multiple; see decohere_channel.
    """
    lam = float(lam)
    if not math.isfinite(lam):
        raise PhysicsError("lambda must be finite")
    e = math.exp(lam)
    return Transform4(np.diag([e, e, 1.0 / e, 1.0 / e]), lorentz=lam == 0.0)


def decohere_channel(s: StokesVector, lam) -> StokesVector:
    """Physical decoherence: (s0, s1, e^-2l s2, e^-2l s3), l >= 0.

    Equals e^-l times decoherence4(l). Output stays physical, purity
    never increases, and the maps form a semigroup in l. Negative l
    (recoherence) is rejected.
    """
    lam = lam.lam if isinstance(lam, DecoherenceParam) else float(lam)
    if not math.isfinite(lam):
        raise PhysicsError("lambda must be finite")
    if lam < 0.0:
        raise PhysicsError("lambda must be nonnegative")
    s.require_physical()
    k = math.exp(-2.0 * lam)
    return StokesVector(s.s0, s.s1, k * s.s2, k * s.s3)


def split_subvectors(s: StokesVector):
    """Project onto the pairs A = (s1, s2) and B = (s0, s3)."""
    return SubVectorA(s.s1, s.s2), SubVectorB(s.s0, s.s3)


def recombine(a: SubVectorA, b: SubVectorB) -> StokesVector:
    """Inverse of split_subvectors."""
    return StokesVector(b.s0, a.s1, a.s2, b.s3)


def d_a(lam):
    """Squeeze diag(e^l, e^-l) acting on an A pair."""
    lam = float(lam)
    if not math.isfinite(lam):
        raise PhysicsError("lambda must be finite")
    return np.array([[math.exp(lam), 0.0], [0.0, math.exp(-lam)]])


def r_a(theta):
    """Full-angle rotation [[cos, -sin], [sin, cos]] on an A pair.

    Acts trivially on B pairs: nothing mixes (s0, s3) under a beam
    rotation.
    """
    theta = float(theta)
    if not math.isfinite(theta):
        raise PhysicsError("theta must be finite")
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


def d_b(lam):
    """Squeeze diag(e^l, e^-l) acting on a B pair."""
    return d_a(lam)


def _check_unimodular2(m):
    m = np.asarray(m, dtype=float)
    if m.shape != (2, 2):
        raise PhysicsError("expected a 2x2 real matrix")
    if not np.isfinite(m).all():
        raise PhysicsError("matrix entries must be finite")
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    if abs(det - 1.0) >= 1e-10:
        raise PhysicsError(f"matrix must have unit determinant: |det - 1| = {abs(det - 1.0):.3e}")
    return m


class IwasawaFactors(NamedTuple):
    """m = r_a(angle) diag(e^exponent, e^-exponent) [[1, shear], [0, 1]]."""

    angle: float
    exponent: float
    shear: float


def iwasawa_decompose(m) -> IwasawaFactors:
    """Unique rotation * squeeze * upper-shear factors of a det-1 matrix.

    The first column of m is e^a (cos k, sin k), which fixes k and a;
    the shear is read off after rotating the column away. Reconstructs
    to rounding level (1e-12 scale).
    """
    m = _check_unimodular2(m)
    r11 = math.hypot(m[0, 0], m[1, 0])
    k = math.atan2(m[1, 0], m[0, 0])
    a = math.log(r11)
    top = math.cos(k) * m[0, 1] + math.sin(k) * m[1, 1]
    return IwasawaFactors(k, a, float(top / r11))


def iwasawa_recompose(f: IwasawaFactors):
    return r_a(f.angle) @ d_a(f.exponent) @ np.array([[1.0, f.shear], [0.0, 1.0]])


class WignerFactors(NamedTuple):
    """m = r_a(axis_angle) diag(e^sigma, e^-sigma) r_a(residual_rotation).

    squeeze_exponent sigma is nonnegative; for sigma > 0 the axis
    angle is canonicalized into (-pi/2, pi/2]. wigner_angle is the
    rotation a product of squeezes generates beyond a single squeeze.
    """

    axis_angle: float
    squeeze_exponent: float
    residual_rotation: float

    @property
    def wigner_angle(self):
        return self.axis_angle + self.residual_rotation


def wigner_decompose(m) -> WignerFactors:
    """Rotation * squeeze * rotation factors of a det-1 real matrix.

    The angle sum and difference come from the invariant combinations
    (m00 + m11, m10 - m01) and (m00 - m11, m10 + m01), whose magnitudes
    are e^s + e^-s and e^s - e^-s. A pure rotation (zero squeeze) has
    no defined axis, and is returned as (theta, 0, 0) with theta in
    (-pi, pi].
    """
    m = _check_unimodular2(m)
    sum_c, sum_s = m[0, 0] + m[1, 1], m[1, 0] - m[0, 1]
    dif_c, dif_s = m[0, 0] - m[1, 1], m[1, 0] + m[0, 1]
    total = math.hypot(sum_c, sum_s)
    excess = math.hypot(dif_c, dif_s)
    if excess <= 1e-14 * total:
        return WignerFactors(math.atan2(sum_s, sum_c), 0.0, 0.0)
    sigma = math.log(0.5 * (total + excess))
    plus = math.atan2(sum_s, sum_c)
    minus = math.atan2(dif_s, dif_c)
    psi = 0.5 * (plus + minus)
    omega = 0.5 * (plus - minus)
    if psi > 0.5 * math.pi:
        psi -= math.pi
        omega -= math.pi
    elif psi <= -0.5 * math.pi:
        psi += math.pi
        omega += math.pi
    omega = math.atan2(math.sin(omega), math.cos(omega))
    return WignerFactors(psi, sigma, omega)


def wigner_recompose(f: WignerFactors):
    return r_a(f.axis_angle) @ d_a(f.squeeze_exponent) @ r_a(f.residual_rotation)
