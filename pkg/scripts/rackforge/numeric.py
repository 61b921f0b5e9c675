"""Floating-point quandles on spheres and projective spaces.

The sphere quandle is ``x ◁ y = 2(x.y)y - x``, the reflection of x through
the line spanned by y. Every operation here broadcasts over leading axes, so
a batch of samples is an ``(m, d)`` array and a single point a ``(d,)`` one.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .constants import COMPOSED_TOLERANCE, DEFAULT_SEED, DEFAULT_TRIALS, UNIT_NORM_TOLERANCE
from .errors import NotUnitError

logger = logging.getLogger(__name__)

BinaryOp = Callable[[np.ndarray, np.ndarray], np.ndarray]
Sampler = Callable[[int], np.ndarray]


@dataclass(frozen=True, eq=False)
class UnitVector:
    """A point of the unit sphere in ``R^dim``; build with :meth:`of`."""

    coords: np.ndarray

    @classmethod
    def of(cls, coords, tol: float = UNIT_NORM_TOLERANCE) -> "UnitVector":
        """Raises NotUnitError when the norm is off by more than tol."""
        arr = np.array(coords, dtype=np.float64)
        if arr.ndim != 1 or arr.size == 0:
            raise NotUnitError(f"expected a non-empty vector, got shape {arr.shape}")
        norm = float(np.linalg.norm(arr))
        if abs(norm - 1.0) > tol:
            raise NotUnitError(f"norm {norm!r} is not 1", (norm,))
        arr.setflags(write=False)
        return cls(arr)

    @property
    def dim(self) -> int:
        return int(self.coords.shape[0])

    def isclose(self, other: "UnitVector", tol: float = UNIT_NORM_TOLERANCE) -> bool:
        return self.dim == other.dim and float(np.max(np.abs(self.coords - other.coords))) <= tol


def _dot(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return np.sum(x * y, axis=-1, keepdims=True)


def reflect(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """``2(x.y)y - x`` on raw arrays, without any norm check."""
    return 2.0 * _dot(x, y) * y - x


def sphere_op(x: UnitVector, y: UnitVector) -> UnitVector:
    if x.dim != y.dim:
        raise ValueError(f"dimension mismatch: {x.dim} and {y.dim}")
    return UnitVector.of(reflect(x.coords, y.coords))


def broken_sphere_op(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """``(x.y)y - x``; not distributive, used as a negative control."""
    return _dot(x, y) * y - x


def trivial_op(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return np.array(x, dtype=np.float64, copy=True)


# ---------------------------------------------------------------------------
# Projective and scaled variants
# ---------------------------------------------------------------------------

def canonical_sign(v: np.ndarray) -> np.ndarray:
    """Representative of ``+-v`` whose largest-magnitude coordinate is positive."""
    v = np.asarray(v, dtype=np.float64)
    pivot = np.take_along_axis(v, np.argmax(np.abs(v), axis=-1)[..., None], axis=-1)
    return np.where(pivot < 0, -v, v)


def projective_op(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """``+-x ◁ +-y = +-(x ◁ y)``, returned as the canonical representative."""
    return canonical_sign(reflect(x, y))


def projective_sign_residual(x: np.ndarray, y: np.ndarray) -> float:
    """Largest gap between the classes produced by the four sign choices."""
    reference = projective_op(x, y)
    spread = 0.0
    for sx in (1.0, -1.0):
        for sy in (1.0, -1.0):
            other = projective_op(sx * x, sy * y)
            spread = max(spread, float(np.max(np.abs(other - reference))))
    return spread


def scaled_op(lam, x: np.ndarray, mu, y: np.ndarray) -> np.ndarray:
    """``lam x ◁ mu y = lam [2 mu^2 (x.y) y - x]``."""
    lam = np.asarray(lam, dtype=np.float64)[..., None] if np.ndim(lam) else lam
    mu = np.asarray(mu, dtype=np.float64)[..., None] if np.ndim(mu) else mu
    return lam * (2.0 * mu ** 2 * _dot(x, y) * y - x)


def scaled_identity_residual(lam, x: np.ndarray, mu, y: np.ndarray) -> float:
    """Gap between :func:`scaled_op` and the reflection formula on ``lam x``, ``mu y``."""
    lam_col = np.asarray(lam, dtype=np.float64)[..., None] if np.ndim(lam) else lam
    mu_col = np.asarray(mu, dtype=np.float64)[..., None] if np.ndim(mu) else mu
    direct = reflect(lam_col * x, mu_col * y)
    return float(np.max(np.abs(scaled_op(lam, x, mu, y) - direct)))


# ---------------------------------------------------------------------------
# Randomised axiom harness
# ---------------------------------------------------------------------------

def sphere_sampler(dim: int, seed: int = DEFAULT_SEED) -> Sampler:
    """Uniform points on ``S^(dim-1)`` from normalised Gaussian coordinates."""
    rng = np.random.default_rng(seed)

    def sample(count: int) -> np.ndarray:
        points = rng.standard_normal((count, dim))
        return points / np.linalg.norm(points, axis=1, keepdims=True)

    return sample


@dataclass(frozen=True)
class NumericReport:
    """Largest residual of each axiom over a batch of sampled triples."""

    trials: int
    distributivity: float
    idempotence: float
    involutivity: float
    bijectivity: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return max(self.distributivity, self.idempotence, self.involutivity,
                   self.bijectivity) <= self.tolerance

    def as_dict(self) -> dict:
        return {
            "trials": self.trials,
            "distributivity": self.distributivity,
            "idempotence": self.idempotence,
            "involutivity": self.involutivity,
            "bijectivity": self.bijectivity,
            "tolerance": self.tolerance,
            "passed": self.passed,
        }


def _max_gap(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.max(np.linalg.norm(a - b, axis=-1))) if len(a) else 0.0


def check_axioms_numeric(op: BinaryOp, sampler: Sampler, trials: int = DEFAULT_TRIALS,
                         tol: float = COMPOSED_TOLERANCE,
                         inverse: Optional[BinaryOp] = None) -> NumericReport:
    """Sample ``trials`` triples and measure every axiom residual.

    Bijectivity of ``R_y`` is measured through ``inverse`` on both sides;
    when omitted the operation is taken to be its own inverse.
    """
    inverse = inverse or op
    x, y, z = sampler(trials), sampler(trials), sampler(trials)
    report = NumericReport(
        trials=trials,
        distributivity=_max_gap(op(op(x, y), z), op(op(x, z), op(y, z))),
        idempotence=_max_gap(op(x, x), x),
        involutivity=_max_gap(op(op(x, y), y), x),
        bijectivity=max(_max_gap(inverse(op(x, y), y), x), _max_gap(op(inverse(x, y), y), x)),
        tolerance=tol,
    )
    logger.debug(f"Numeric axiom check over {trials} trials: {report}")
    return report


def exponential_homomorphism_residual(trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED) -> float:
    """Check ``t -> exp(2 pi i t)`` carries ``2t' - t`` to ``z' z^-1 z'``.

    The image is compared both with the complex formula and with the sphere
    operation on the circle.
    """
    rng = np.random.default_rng(seed)
    t, t_prime = rng.random(trials), rng.random(trials)
    z, z_prime = np.exp(2j * np.pi * t), np.exp(2j * np.pi * t_prime)
    image = np.exp(2j * np.pi * (2.0 * t_prime - t))
    complex_gap = np.abs(image - z_prime * z_prime / z)

    def planar(w: np.ndarray) -> np.ndarray:
        return np.stack([w.real, w.imag], axis=-1)

    sphere_gap = np.linalg.norm(planar(image) - reflect(planar(z), planar(z_prime)), axis=-1)
    return float(max(np.max(complex_gap), np.max(sphere_gap)))
