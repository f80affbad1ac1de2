"""Commutation up to a unitary factor for self-adjoint pairs.

For Hermitian A, B with AB^2A = BA^2B the product AB is normal and a
unitary U with AB = U BA exists; it is built from the polar decomposition
AB = V|AB| as U = V^2 + Q, where Q projects onto ker(AB).  The module also
checks the Gudder-Nagy equivalence AB^2A = BA^2B  <=>  (AB^2 = B^2A and
BA^2 = A^2B) as an executable property.
"""

from dataclasses import dataclass

import numpy as np

from .commutation import OperatorPair
from .errors import ConditionFailed, DimensionMismatch, NotHermitian, VerificationFailed
from .linalg import DEFAULT_TOL, frob, is_hermitian, matrix_to_json, polar


@dataclass
class UnitaryIntertwiner:
    """The constructed unitary together with its polar ingredients.

    ``U = V^2 + Q`` acts as V^2 on the closure of the range of |AB| and as
    the identity on the kernel; ``P + Q = I``.  U is not unique (any
    unitary agreeing with V^2 on the range projection works); this is the
    canonical identity-on-kernel choice, and ``verify_intertwiner``
    accepts any other valid choice.
    """

    U: np.ndarray
    V: np.ndarray
    P: np.ndarray
    Q: np.ndarray
    residual_intertwine: float
    residual_unitary: float

    def to_json(self) -> dict:
        return {
            "U": matrix_to_json(self.U),
            "V": matrix_to_json(self.V),
            "P": matrix_to_json(self.P),
            "Q": matrix_to_json(self.Q),
            "residual_intertwine": self.residual_intertwine,
            "residual_unitary": self.residual_unitary,
        }


@dataclass
class GudderNagyReport:
    """Both sides of the equivalence, evaluated independently."""

    lhs_holds: bool  # AB^2A = BA^2B
    rhs_holds: bool  # AB^2 = B^2A and BA^2 = A^2B
    consistent: bool
    lhs_magnitude: float
    rhs_magnitude_ab: float
    rhs_magnitude_ba: float

    def to_json(self) -> dict:
        return {
            "lhs_holds": self.lhs_holds,
            "rhs_holds": self.rhs_holds,
            "consistent": self.consistent,
            "lhs_magnitude": self.lhs_magnitude,
            "rhs_magnitude_ab": self.rhs_magnitude_ab,
            "rhs_magnitude_ba": self.rhs_magnitude_ba,
        }


def _require_hermitian_pair(pair: OperatorPair, tol: float) -> None:
    if not is_hermitian(pair.A, tol):
        raise NotHermitian("A is not Hermitian within tolerance")
    if not is_hermitian(pair.B, tol):
        raise NotHermitian("B is not Hermitian within tolerance")


def _norm_condition_magnitude(pair: OperatorPair) -> float:
    A, B = pair.A, pair.B
    lhs = A @ B @ B @ A
    rhs = B @ A @ A @ B
    return frob(lhs - rhs) / max(1.0, frob(lhs))


def check_norm_condition(pair: OperatorPair, tol: float = DEFAULT_TOL) -> bool:
    """True iff AB^2A = BA^2B within tolerance (Hermitian pair required).

    The condition is algebraically equivalent to |AB| = |BA|; the polar
    route is evaluated as well and a gross disagreement between the two
    raises, since that would indicate a numerics bug rather than a
    property of the input.  The guard bands are wide because the matrix
    square root halves the number of accurate digits near the boundary.
    """
    _require_hermitian_pair(pair, tol)
    mag = _norm_condition_magnitude(pair)
    ok = mag <= tol

    abs_ab = polar(pair.A @ pair.B, tol).absC
    abs_ba = polar(pair.B @ pair.A, tol).absC
    polar_gap = frob(abs_ab - abs_ba) / max(1.0, frob(abs_ab))
    sqrt_tol = float(np.sqrt(max(tol, 1e-15)))
    if ok and polar_gap > 10.0 * sqrt_tol:
        raise VerificationFailed(
            f"AB^2A = BA^2B holds ({mag:.3e}) but |AB| differs from |BA| ({polar_gap:.3e})"
        )
    if not ok and mag > sqrt_tol and polar_gap <= tol:
        raise VerificationFailed(
            f"AB^2A != BA^2B ({mag:.3e}) but |AB| matches |BA| ({polar_gap:.3e})"
        )
    return ok


def gudder_nagy_check(pair: OperatorPair, tol: float = DEFAULT_TOL) -> GudderNagyReport:
    """Evaluate AB^2A = BA^2B against (AB^2 = B^2A and BA^2 = A^2B).

    The two sides are equivalent for Hermitian pairs; ``consistent``
    asserts exactly that and must hold for every valid input.
    """
    _require_hermitian_pair(pair, tol)
    A, B = pair.A, pair.B
    lhs_mag = _norm_condition_magnitude(pair)
    ab2 = A @ B @ B
    b2a = B @ B @ A
    ba2 = B @ A @ A
    a2b = A @ A @ B
    mag_ab = frob(ab2 - b2a) / max(1.0, frob(ab2))
    mag_ba = frob(ba2 - a2b) / max(1.0, frob(ba2))
    lhs_holds = bool(lhs_mag <= tol)
    rhs_holds = bool(mag_ab <= tol and mag_ba <= tol)
    return GudderNagyReport(
        lhs_holds=lhs_holds,
        rhs_holds=rhs_holds,
        consistent=lhs_holds == rhs_holds,
        lhs_magnitude=lhs_mag,
        rhs_magnitude_ab=mag_ab,
        rhs_magnitude_ba=mag_ba,
    )


def construct_intertwiner(pair: OperatorPair, tol: float = DEFAULT_TOL) -> UnitaryIntertwiner:
    """Build the unitary U with AB = U BA from the polar parts of AB.

    Requires a Hermitian pair satisfying the norm condition.  With
    AB = V|AB| and Q the kernel projection, U = V^2 + Q is unitary and
    intertwines the two products; both facts are verified and a failure
    raises VerificationFailed because the construction is guaranteed to
    succeed when the precondition holds (a failure signals a rank-cutoff
    misclassification, not a property of the input).
    """
    _require_hermitian_pair(pair, tol)
    mag = _norm_condition_magnitude(pair)
    if mag > tol:
        raise ConditionFailed(f"AB^2A != BA^2B (relative magnitude {mag:.3e})")

    AB = pair.A @ pair.B
    BA = pair.B @ pair.A
    parts = polar(AB, tol)
    U = parts.V @ parts.V + parts.Q

    residual_unitary = frob(U.conj().T @ U - np.eye(pair.dim))
    residual_intertwine = frob(AB - U @ BA) / max(1.0, frob(AB))
    if residual_unitary > tol or residual_intertwine > 10.0 * tol:
        raise VerificationFailed(
            f"intertwiner residuals too large: unitary {residual_unitary:.3e}, "
            f"intertwine {residual_intertwine:.3e}"
        )
    return UnitaryIntertwiner(
        U=U,
        V=parts.V,
        P=parts.P,
        Q=parts.Q,
        residual_intertwine=residual_intertwine,
        residual_unitary=residual_unitary,
    )


def verify_intertwiner(pair: OperatorPair, U: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    """True iff U is unitary and AB = U BA, both within tolerance."""
    U = np.asarray(U, dtype=np.complex128)
    if U.shape != pair.A.shape:
        raise DimensionMismatch(f"U has shape {U.shape}, expected {pair.A.shape}")
    AB = pair.A @ pair.B
    BA = pair.B @ pair.A
    unitary_ok = frob(U.conj().T @ U - np.eye(pair.dim)) <= tol
    intertwine_ok = frob(AB - U @ BA) <= tol * max(1.0, frob(AB))
    return bool(unitary_ok and intertwine_ok)
