"""Factor detection and classification for relations AB = lambda * BA.

Given an operator pair, the detector fits the scalar factor by Frobenius
least squares; the classifier assembles every structural constraint on the
factor (reality, sign, modulus, roots of unity, spectrum rotation,
quasi-nilpotency of the product) and verifies the fitted factor against
each of them.
"""

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
from scipy.optimize import linear_sum_assignment

from .errors import DimensionMismatch, InvalidParameter, NotNormal
from .linalg import (
    DEFAULT_TOL,
    StructureFlags,
    as_matrix,
    classify_structure,
    complex_to_json,
    eigenvalues,
    frob,
    matrix_from_json,
    matrix_to_json,
    require_square,
)
from .sampling import ginibre, rng_for

UNIQUE = "UNIQUE"
ANY = "ANY"
NONE = "NONE"


@dataclass
class OperatorPair:
    """A pair (A, B) of equal-dimension square matrices.

    ``declared_lambda`` records the factor the pair was built to satisfy,
    when known; detection never reads it.
    """

    A: np.ndarray
    B: np.ndarray
    declared_lambda: complex | None = None
    label: str = ""

    def __post_init__(self):
        self.A = as_matrix(self.A)
        self.B = as_matrix(self.B)
        require_square(self.A, "A")
        require_square(self.B, "B")
        if self.A.shape != self.B.shape:
            raise DimensionMismatch(
                f"A and B must have equal dimension, got {self.A.shape} and {self.B.shape}"
            )
        if self.declared_lambda is not None and self.declared_lambda == 0:
            raise InvalidParameter("a declared factor must be nonzero")

    @property
    def dim(self) -> int:
        return self.A.shape[0]

    def swapped(self) -> "OperatorPair":
        lam = self.declared_lambda
        return OperatorPair(
            A=self.B,
            B=self.A,
            declared_lambda=None if lam is None else 1.0 / lam,
            label=f"{self.label} (swapped)" if self.label else "(swapped)",
        )

    def to_json(self) -> dict:
        return {
            "A": matrix_to_json(self.A),
            "B": matrix_to_json(self.B),
            "declared_lambda": None
            if self.declared_lambda is None
            else complex_to_json(self.declared_lambda),
            "label": self.label,
        }

    @classmethod
    def from_json(cls, obj) -> "OperatorPair":
        if not isinstance(obj, dict) or "A" not in obj or "B" not in obj:
            raise InvalidParameter("pair JSON must be an object with keys A and B")
        lam = obj.get("declared_lambda")
        return cls(
            A=matrix_from_json(obj["A"]),
            B=matrix_from_json(obj["B"]),
            declared_lambda=None if lam is None else complex(lam[0], lam[1]),
            label=str(obj.get("label", "")),
        )


@dataclass
class FactorReport:
    """Outcome of factor detection.

    status UNIQUE: ``lambda_hat`` fits AB = lambda BA with small residual.
    status ANY: AB = BA = 0, any nonzero factor works, ``lambda_hat`` absent.
    status NONE: BA = 0 != AB, or the best fit leaves a large residual
    (``lambda_hat`` then still reports the least-squares value).
    """

    status: str
    lambda_hat: complex | None
    residual: float
    ab_norm: float
    ba_norm: float

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "lambda_hat": None if self.lambda_hat is None else complex_to_json(self.lambda_hat),
            "residual": self.residual,
            "ab_norm": self.ab_norm,
            "ba_norm": self.ba_norm,
        }


@dataclass
class SpectrumMatchReport:
    """Multiset comparison of two spectra under optimal assignment."""

    matched: bool
    max_pair_distance: float
    assignment: list[tuple[int, int]] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "matched": self.matched,
            "max_pair_distance": self.max_pair_distance,
            "assignment": [[int(i), int(j)] for i, j in self.assignment],
        }


@dataclass
class LambdaConstraint:
    """A single structural constraint on the admissible factor."""

    kind: str  # "real" | "pm1" | "one" | "unimodular" | "nth-root"
    text: str
    source: str
    order: int | None = None  # n for the nth-root kind
    satisfied: bool | None = None
    discrepancy: float | None = None

    def to_json(self) -> dict:
        return {
            "constraint": self.text,
            "kind": self.kind,
            "source": self.source,
            "order": self.order,
            "satisfied": self.satisfied,
            "discrepancy": self.discrepancy,
        }


@dataclass
class ClassificationReport:
    flags_A: StructureFlags
    flags_B: StructureFlags
    factor: FactorReport
    constraints: list[LambdaConstraint]
    swap_check: SpectrumMatchReport | None
    product_rotation: SpectrumMatchReport | None
    a_spectrum_rotation: SpectrumMatchReport | None
    b_spectrum_rotation: SpectrumMatchReport | None
    product_quasinilpotent: bool
    consistent: bool
    violations: list[str]

    def to_json(self) -> dict:
        return {
            "status": self.factor.status,
            "lambda_hat": None
            if self.factor.lambda_hat is None
            else complex_to_json(self.factor.lambda_hat),
            "residual": self.factor.residual,
            "factor": self.factor.to_json(),
            "flags_A": self.flags_A.to_json(),
            "flags_B": self.flags_B.to_json(),
            "constraints": [c.to_json() for c in self.constraints],
            "swap_check": None if self.swap_check is None else self.swap_check.to_json(),
            "product_rotation": None
            if self.product_rotation is None
            else self.product_rotation.to_json(),
            "a_spectrum_rotation": None
            if self.a_spectrum_rotation is None
            else self.a_spectrum_rotation.to_json(),
            "b_spectrum_rotation": None
            if self.b_spectrum_rotation is None
            else self.b_spectrum_rotation.to_json(),
            "product_quasinilpotent": self.product_quasinilpotent,
            "consistent": self.consistent,
            "violations": self.violations,
        }


def detect_factor(pair: OperatorPair, tol: float = DEFAULT_TOL) -> FactorReport:
    """Fit lambda in AB = lambda * BA by Frobenius least squares.

    The minimizer of ||AB - lambda BA||_F is the Frobenius inner product
    <BA, AB> / ||BA||^2, which is well defined for non-diagonalizable
    inputs and yields a residual for the UNIQUE/NONE decision.  Zero
    products are judged relative to max(1, ||A|| * ||B||).
    """
    AB = pair.A @ pair.B
    BA = pair.B @ pair.A
    ab_norm = frob(AB)
    ba_norm = frob(BA)
    zero_cut = tol * max(1.0, frob(pair.A) * frob(pair.B))

    if ab_norm <= zero_cut and ba_norm <= zero_cut:
        return FactorReport(status=ANY, lambda_hat=None, residual=0.0, ab_norm=ab_norm, ba_norm=ba_norm)
    if ba_norm <= zero_cut:
        return FactorReport(
            status=NONE,
            lambda_hat=None,
            residual=ab_norm / max(1.0, ab_norm),
            ab_norm=ab_norm,
            ba_norm=ba_norm,
        )

    lam = complex(np.vdot(BA, AB) / np.vdot(BA, BA).real)
    residual = frob(AB - lam * BA) / max(1.0, ab_norm)
    status = UNIQUE if residual <= 10.0 * tol else NONE
    return FactorReport(status=status, lambda_hat=lam, residual=residual, ab_norm=ab_norm, ba_norm=ba_norm)


def _assignment_match(left: np.ndarray, right: np.ndarray, tol: float) -> SpectrumMatchReport:
    cost = np.abs(left[:, None] - right[None, :])
    rows, cols = linear_sum_assignment(cost)
    max_dist = float(cost[rows, cols].max()) if rows.size else 0.0
    return SpectrumMatchReport(
        matched=bool(max_dist <= tol),
        max_pair_distance=max_dist,
        assignment=list(zip(rows.tolist(), cols.tolist())),
    )


def spectrum_rotation_check(
    spectrum: np.ndarray, lam: complex, tol: float = DEFAULT_TOL
) -> SpectrumMatchReport:
    """Check that a spectrum is invariant under multiplication by lambda.

    Optimal assignment (Hungarian method) between S and lambda * S; greedy
    sorted matching fails on near-degenerate rotated spectra, assignment
    does not.
    """
    if lam == 0:
        raise InvalidParameter("rotation factor must be nonzero")
    S = np.asarray(spectrum, dtype=np.complex128).ravel()
    return _assignment_match(S, lam * S, tol)


def spectrum_swap_check(pair: OperatorPair, tol: float = DEFAULT_TOL) -> SpectrumMatchReport:
    """Match the eigenvalue multisets of AB and BA.

    For square factors of equal dimension the two products share their full
    characteristic polynomial, so the whole multisets must agree.
    """
    return _assignment_match(eigenvalues(pair.A @ pair.B), eigenvalues(pair.B @ pair.A), tol)


def trace_det_constraints(
    pair: OperatorPair, kmax: int, tol: float = DEFAULT_TOL
) -> list[LambdaConstraint]:
    """Trace and determinant obstructions in dimension n.

    A nonzero tr[A B^k] or tr[A^k B] forces lambda = 1; a nonzero
    det(AB) forces lambda^n = 1.  Magnitudes are reported so callers can
    judge borderline cases.
    """
    if kmax < 1:
        raise InvalidParameter("kmax must be at least 1")
    A, B = pair.A, pair.B
    n = pair.dim
    out: list[LambdaConstraint] = []
    Bk = np.eye(n, dtype=np.complex128)
    Ak = np.eye(n, dtype=np.complex128)
    for k in range(1, kmax + 1):
        Bk = Bk @ B
        Ak = Ak @ A
        for trace, name in (
            (complex(np.trace(A @ Bk)), f"tr[A B^{k}]"),
            (complex(np.trace(Ak @ B)), f"tr[A^{k} B]"),
        ):
            if abs(trace) > tol:
                out.append(
                    LambdaConstraint(
                        kind="one",
                        text="lambda = 1",
                        source=f"nonzero trace {name} = {trace:.6g}",
                    )
                )
    det = complex(np.linalg.det(A @ B))
    if abs(det) > tol:
        out.append(
            LambdaConstraint(
                kind="nth-root",
                text=f"lambda^{n} = 1",
                source=f"nonzero det(AB) = {det:.6g}",
                order=n,
            )
        )
    return out


def _constraint_discrepancy(c: LambdaConstraint, lam: complex) -> float:
    if c.kind == "real":
        return abs(lam.imag)
    if c.kind == "pm1":
        return min(abs(lam - 1.0), abs(lam + 1.0))
    if c.kind == "one":
        return abs(lam - 1.0)
    if c.kind == "unimodular":
        return abs(abs(lam) - 1.0)
    if c.kind == "nth-root":
        return abs(lam ** c.order - 1.0)
    raise InvalidParameter(f"unknown constraint kind {c.kind!r}")


def classify_pair(
    pair: OperatorPair, tol: float = DEFAULT_TOL, kmax: int | None = None
) -> ClassificationReport:
    """Full structural classification of a pair against the factor rules.

    Assembles every constraint implied by the structure flags (reality for
    a self-adjoint factor, {1,-1} for a self-adjoint pair, 1 with a
    positive factor, unit modulus for invertible/unitary factors or a
    non-quasi-nilpotent product, roots of unity from traces and the
    determinant), then, when a unique factor was detected, verifies the
    fitted value and the spectral-rotation identities against each.
    Constraint checks are advisory over floating point: every violation
    records the magnitude of the discrepancy.
    """
    factor = detect_factor(pair, tol)
    flags_A = classify_structure(pair.A, tol)
    flags_B = classify_structure(pair.B, tol)
    n = pair.dim
    kmax = n if kmax is None else kmax

    product_flags = classify_structure(pair.A @ pair.B, tol)

    constraints: list[LambdaConstraint] = []
    if flags_A.hermitian or flags_B.hermitian:
        which = "both factors" if flags_A.hermitian and flags_B.hermitian else (
            "A" if flags_A.hermitian else "B"
        )
        constraints.append(
            LambdaConstraint(kind="real", text="lambda real", source=f"{which} self-adjoint")
        )
    if flags_A.hermitian and flags_B.hermitian:
        constraints.append(
            LambdaConstraint(
                kind="pm1", text="lambda in {1, -1}", source="both factors self-adjoint"
            )
        )
        if flags_A.positive_semidefinite or flags_B.positive_semidefinite:
            constraints.append(
                LambdaConstraint(
                    kind="one",
                    text="lambda = 1",
                    source="self-adjoint pair with a positive factor",
                )
            )
    if flags_A.invertible and (not flags_B.quasi_nilpotent or flags_A.unitary):
        constraints.append(
            LambdaConstraint(
                kind="unimodular",
                text="|lambda| = 1",
                source="A invertible and sigma(B) != {0}"
                if not flags_B.quasi_nilpotent
                else "A unitary",
            )
        )
    if flags_B.invertible and (not flags_A.quasi_nilpotent or flags_B.unitary):
        constraints.append(
            LambdaConstraint(
                kind="unimodular",
                text="|lambda| = 1",
                source="B invertible and sigma(A) != {0}"
                if not flags_A.quasi_nilpotent
                else "B unitary",
            )
        )
    if not product_flags.quasi_nilpotent:
        constraints.append(
            LambdaConstraint(
                kind="unimodular",
                text="|lambda| = 1",
                source="sigma(AB) != {0}",
            )
        )
    constraints.extend(trace_det_constraints(pair, kmax, tol))

    swap_check = None
    product_rotation = None
    a_rotation = None
    b_rotation = None
    violations: list[str] = []

    if factor.status == UNIQUE:
        lam = factor.lambda_hat
        check_cut = 10.0 * tol
        for c in constraints:
            c.discrepancy = _constraint_discrepancy(c, lam)
            c.satisfied = bool(c.discrepancy <= check_cut)
            if not c.satisfied:
                violations.append(
                    f"{c.text} violated by {c.discrepancy:.3e} ({c.source})"
                )
        swap_check = spectrum_swap_check(pair, tol)
        if not swap_check.matched:
            violations.append(
                f"sigma(AB) != sigma(BA): max assignment distance {swap_check.max_pair_distance:.3e}"
            )
        product_rotation = spectrum_rotation_check(eigenvalues(pair.A @ pair.B), lam, tol)
        if not product_rotation.matched:
            violations.append(
                f"sigma(AB) not invariant under lambda: distance {product_rotation.max_pair_distance:.3e}"
            )
        if flags_A.invertible:
            b_rotation = spectrum_rotation_check(eigenvalues(pair.B), lam, tol)
            if not b_rotation.matched:
                violations.append(
                    f"sigma(B) not invariant under lambda (A invertible): "
                    f"distance {b_rotation.max_pair_distance:.3e}"
                )
        if flags_B.invertible:
            a_rotation = spectrum_rotation_check(eigenvalues(pair.A), lam, tol)
            if not a_rotation.matched:
                violations.append(
                    f"sigma(A) not invariant under lambda (B invertible): "
                    f"distance {a_rotation.max_pair_distance:.3e}"
                )
        if abs(abs(lam) - 1.0) > check_cut and not product_flags.quasi_nilpotent:
            violations.append(
                f"|lambda| = {abs(lam):.6g} != 1 requires a quasi-nilpotent product, "
                "but sigma(AB) != {0}"
            )

    return ClassificationReport(
        flags_A=flags_A,
        flags_B=flags_B,
        factor=factor,
        constraints=constraints,
        swap_check=swap_check,
        product_rotation=product_rotation,
        a_spectrum_rotation=a_rotation,
        b_spectrum_rotation=b_rotation,
        product_quasinilpotent=product_flags.quasi_nilpotent,
        consistent=not violations,
        violations=violations,
    )


def solve_lambda_commutant(
    A: np.ndarray, lam: complex, tol: float = DEFAULT_TOL
) -> list[np.ndarray]:
    """Basis of the solution space of A B = lambda * B A for normal A.

    In an orthonormal eigenbasis of A with eigenvalues a_1..a_n the
    equation reads (a_i - lambda a_j) B_ij = 0, so the space is spanned by
    the matrix units at index pairs with a_i = lambda a_j; those units are
    transformed back to the original basis.  Eigenvalue coincidence is
    judged at tol * max(1, ||A||_F).
    """
    A = as_matrix(A)
    require_square(A)
    if lam == 0:
        raise InvalidParameter("lambda must be nonzero")
    scale = max(1.0, frob(A))
    if frob(A @ A.conj().T - A.conj().T @ A) > tol * scale * scale:
        raise NotNormal("matrix is not normal within tolerance")
    T, Z = scipy.linalg.schur(A, output="complex")
    diag = np.diagonal(T)
    basis: list[np.ndarray] = []
    n = A.shape[0]
    for i in range(n):
        for j in range(n):
            if abs(diag[i] - lam * diag[j]) <= tol * scale:
                basis.append(np.outer(Z[:, i], Z[:, j].conj()))
    return basis


def measurement_map_check(
    pair: OperatorPair,
    trials: int = 50,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
) -> bool:
    """Randomized check that X -> AB X BA and X -> BA X AB agree.

    Draws ``trials`` seeded matrices with i.i.d. standard complex Gaussian
    entries and compares the two maps on each; per-trial seeds derive from
    ``seed`` so results are reproducible and schedule-independent.
    """
    if trials < 1:
        raise InvalidParameter("trials must be at least 1")
    AB = pair.A @ pair.B
    BA = pair.B @ pair.A
    n = pair.dim
    for t in range(trials):
        X = ginibre(rng_for(seed, t), n)
        lhs = AB @ X @ BA
        rhs = BA @ X @ AB
        if frob(lhs - rhs) > tol * max(1.0, frob(lhs)):
            return False
    return True
