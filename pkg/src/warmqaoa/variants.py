"""Per-qubit encodings of the four level-1 QAOA variants.

Every variant is expressed through the same circuit

    R_y(alpha) exp(-i beta H_M) R_y(-alpha) exp(-i gamma H_C) R_y(delta) |warm_bits>

so the engine and the oracles only ever see ``(warm_bits, alpha, delta)``.
Bit 0 is the +1 eigenstate of Z, bit 1 the -1 eigenstate.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

VARIANTS = ("standard", "ws_qaoa", "ws_ab", "warmest")
SQRT3_3 = np.sqrt(3.0) / 3.0


def z_signs(bits) -> np.ndarray:
    """<Z_j> of the basis state: bit 0 -> +1, bit 1 -> -1."""
    return 1.0 - 2.0 * np.asarray(bits, dtype=float)


def _bits(bits) -> np.ndarray:
    b = np.asarray(bits, dtype=np.int8).ravel()
    if np.any((b != 0) & (b != 1)):
        raise ValueError("warm bits must be 0 or 1")
    return b


def basis_angles(bits) -> np.ndarray:
    """Rotation angle that carries |0> to each warm bit's state: +pi/2 for 0, -pi/2 for 1."""
    return np.where(_bits(bits) == 0, np.pi / 2, -np.pi / 2)


@dataclass(frozen=True, eq=False)
class VariantConfig:
    variant: str
    warm_bits: np.ndarray
    alpha: np.ndarray
    delta: np.ndarray
    h: np.ndarray | None = None
    epsilon: float | None = None

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}")
        bits = _bits(self.warm_bits)
        alpha = np.asarray(self.alpha, dtype=float).ravel()
        delta = np.asarray(self.delta, dtype=float).ravel()
        if not (bits.size == alpha.size == delta.size):
            raise ValueError("warm_bits, alpha and delta must have equal length")
        for name, arr in (("warm_bits", bits), ("alpha", alpha), ("delta", delta)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        if self.h is not None:
            h = np.asarray(self.h, dtype=float).ravel().copy()
            h.setflags(write=False)
            object.__setattr__(self, "h", h)

    @property
    def n(self) -> int:
        return self.alpha.size

    @property
    def zc(self) -> np.ndarray:
        return z_signs(self.warm_bits)

    def subset(self, vertices) -> VariantConfig:
        """Restriction to ``vertices`` (in the given order), used by local oracles."""
        idx = np.asarray(vertices, dtype=int)
        h = None if self.h is None else self.h[idx]
        return VariantConfig(self.variant, self.warm_bits[idx], self.alpha[idx], self.delta[idx], h, self.epsilon)


def encode_standard(n: int) -> VariantConfig:
    return VariantConfig("standard", np.zeros(n, np.int8), np.zeros(n), np.full(n, -np.pi / 2))


def encode_ws_ab(warm_bits, h) -> VariantConfig:
    """Adaptive-bias mixer tilt from bias fields ``h``; start in the mixer ground state."""
    bits = _bits(warm_bits)
    h = np.asarray(h, dtype=float).ravel()
    if h.size != bits.size:
        raise ValueError(f"h has length {h.size}, warm bits {bits.size}")
    # cos a = 1/sqrt(1+h^2) > 0 pins a to (-pi/2, pi/2)
    alpha = np.arctan(h)
    return VariantConfig("ws_ab", bits, alpha, alpha - basis_angles(bits), h=h)


def ws_qaoa_theta(c, eps: float) -> np.ndarray:
    c = np.asarray(c, dtype=float).ravel()
    if not 0.0 <= eps <= 0.5:
        raise ValueError(f"epsilon must lie in [0, 0.5], got {eps}")
    if np.any((c < 0) | (c > 1)) or np.any(~np.isfinite(c)):
        raise ValueError("warm-start values must lie in [0, 1]")
    return 2.0 * np.arcsin(np.sqrt(np.clip(c, eps, 1.0 - eps))) - np.pi / 2


def encode_ws_qaoa(c, eps: float = 0.25) -> VariantConfig:
    """Regularized warm start from relaxed or rounded values ``c`` in [0, 1]."""
    theta = ws_qaoa_theta(c, eps)
    bits = (np.asarray(c, dtype=float).ravel() > 0.5).astype(np.int8)
    alpha = np.pi - theta
    delta = np.pi - alpha - basis_angles(bits)
    return VariantConfig("ws_qaoa", bits, alpha, delta, epsilon=float(eps))


def encode_warmest(theta) -> VariantConfig:
    """Rank-2 relaxation angles become both the start-state tilt and the mixer tilt."""
    theta = np.asarray(theta, dtype=float).ravel()
    n = theta.size
    return VariantConfig("warmest", np.zeros(n, np.int8), theta + np.pi / 2, theta.copy())


def recovery_fields(warm_bits) -> np.ndarray:
    """Bias fields -sqrt(3)/3 for bit 0 and +sqrt(3)/3 for bit 1."""
    return np.where(_bits(warm_bits) == 0, -SQRT3_3, SQRT3_3)


def random_config(n: int, rng: np.random.Generator, variant: str | None = None) -> VariantConfig:
    """Random configuration of a random (or given) variant; used by oracle checks."""
    variant = variant or VARIANTS[rng.integers(len(VARIANTS))]
    bits = rng.integers(0, 2, n)
    if variant == "standard":
        return encode_standard(n)
    if variant == "ws_ab":
        return encode_ws_ab(bits, rng.normal(0.0, 1.0, n))
    if variant == "ws_qaoa":
        c = np.where(rng.random(n) < 0.5, bits.astype(float), rng.random(n))
        return encode_ws_qaoa(c, rng.uniform(0.0, 0.5))
    return encode_warmest(rng.uniform(0, 2 * np.pi, n))
