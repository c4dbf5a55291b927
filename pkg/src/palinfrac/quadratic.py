"""Quadratic relations of periodic functions and the exact identity verifier.

A function with purely periodic coefficients is a fixed point of the Moebius
map of the transfer matrix over one period: with that matrix written as
[[A, B], [C, D]], the fixed-point equation unfolds to

    C*m^2 + (D - A)*m - B = 0,

which is the quadratic relation (alpha, beta, gamma) = (C, D - A, -B).
Pulling the relation back through the preperiodic transfer matrix produces
the relation satisfied by the full eventually periodic function M.

The verifier decides, by exact polynomial arithmetic alone, whether

    1 / (ak^2 * Mtilde(z))  =  f_{T3 T2 T1}(M(z))

holds identically, where Mtilde is the second root of M's quadratic and ak
is the a-entry of the last preperiodic pair.  Eliminating Mtilde through the
product of roots (M * Mtilde = gamma/alpha), cross-multiplying, and reducing
modulo the relation (alpha*M^2 = -beta*M - gamma) collapses the identity to

    (alpha*D - beta*C - ak^2*gamma*A) * M - gamma*(C + ak^2*B) = 0

with [[A, B], [C, D]] = T3*T2*T1.  Because M is not a rational function
whenever the discriminant beta^2 - 4*alpha*gamma is not a polynomial square
(guarded), the identity holds if and only if both collected coefficients are
the zero polynomial.  The verdict therefore needs no numerical tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import DegenerateRelation, DivisionByZero, IndexOutOfRange, NumericInstability
from .exactalg import Mat2, Poly, poly_gcd, poly_is_square, rational_content
from .jacobi import JacobiPair, JacobiSequence, normalize_kp
from .orthopoly import build_T1, build_T2, build_T3, conj_transfer


@dataclass(frozen=True)
class QuadraticRelation:
    """Polynomials (alpha, beta, gamma) with alpha*y^2 + beta*y + gamma = 0."""

    alpha: Poly
    beta: Poly
    gamma: Poly

    def __post_init__(self) -> None:
        if self.alpha.is_zero() and self.beta.is_zero() and self.gamma.is_zero():
            raise DegenerateRelation("all three relation polynomials are zero")

    def discriminant(self) -> Poly:
        return self.beta * self.beta - self.alpha * self.gamma.scale(4)

    def canonical(self) -> "QuadraticRelation":
        """Divide out the common polynomial factor and the rational content.

        The monic polynomial gcd and a positive rational content are removed,
        so proportional relations with the same signs become equal.  Signs
        are never flipped.
        """
        g = poly_gcd(poly_gcd(self.alpha, self.beta), self.gamma)
        triple = [self.alpha, self.beta, self.gamma]
        if g.degree > 0:
            triple = [divmod(t, g)[0] for t in triple]
        content = rational_content(triple)
        if content not in (0, 1):
            triple = [t.scale(1 / content) for t in triple]
        return QuadraticRelation(*triple)

    def is_proportional_to(self, other: "QuadraticRelation") -> bool:
        """Exact cross-multiplication test for projective equality."""
        return (
            self.alpha * other.beta == other.alpha * self.beta
            and self.alpha * other.gamma == other.alpha * self.gamma
            and self.beta * other.gamma == other.beta * self.gamma
        )

    def residual(self, y, z):
        """Evaluate alpha(z)*y^2 + beta(z)*y + gamma(z)."""
        return self.alpha(z) * y * y + self.beta(z) * y + self.gamma(z)


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of the exact identity check at one candidate first length."""

    ell: int
    residual_P: Poly
    residual_Q: Poly
    holds: bool
    diagnostics: dict = field(default_factory=dict)


def periodic_quadratic(periodic: Sequence[JacobiPair]) -> QuadraticRelation:
    """The quadratic relation satisfied by the purely periodic function.

    Built from the fixed-point equation of the one-period transfer matrix.
    Returns exactly (C, D - A, -B); no normalization is applied.
    """
    if len(periodic) < 1:
        raise IndexOutOfRange("period must be nonempty")
    t = conj_transfer(periodic, len(periodic))
    relation = QuadraticRelation(t.a21, t.a22 - t.a11, -t.a12)
    if relation.gamma.is_zero():
        raise DegenerateRelation("fixed-point relation has gamma = 0")
    return relation


def pullback_quadratic(relation: QuadraticRelation, transform: Mat2) -> QuadraticRelation:
    """The relation satisfied by x when y = f_transform(x) satisfies `relation`.

    Substitutes y = (a*x + b)/(c*x + d), clears the squared denominator, and
    collects in x.  The result is canonicalized (common polynomial content
    divided out).

    Raises:
        DegenerateRelation: the transform has zero determinant, so the
            substitution collapses.
    """
    if transform.det().is_zero():
        raise DegenerateRelation("pullback through a singular matrix")
    a, b, c, d = transform.entries()
    al, be, ga = relation.alpha, relation.beta, relation.gamma
    alpha_new = al * (a * a) + be * (a * c) + ga * (c * c)
    beta_new = (al * (a * b)).scale(2) + be * (a * d + b * c) + (ga * (c * d)).scale(2)
    gamma_new = al * (b * b) + be * (b * d) + ga * (d * d)
    return QuadraticRelation(alpha_new, beta_new, gamma_new).canonical()


def discriminant_is_square(relation: QuadraticRelation) -> bool:
    """True iff beta^2 - 4*alpha*gamma is the square of a rational polynomial."""
    return poly_is_square(relation.discriminant())


def second_solution_value(relation: QuadraticRelation, m_val, z):
    """The other root of the quadratic at z, via the product of roots.

    Returns gamma(z) / (alpha(z) * m_val).

    Raises:
        DivisionByZero: alpha vanishes at z or m_val is zero.
    """
    denom = relation.alpha(z) * m_val
    if denom == 0:
        raise DivisionByZero("second solution undefined: alpha(z)*m = 0")
    return relation.gamma(z) / denom


def _relation_for_sequence(seq: JacobiSequence) -> tuple[QuadraticRelation, Mat2]:
    """The canonical quadratic for the full function M, plus the preperiodic matrix."""
    t1 = build_T1(seq)
    tail = periodic_quadratic(seq.periodic)
    return pullback_quadratic(tail, t1), t1


def _guard_relation(relation: QuadraticRelation) -> None:
    if relation.alpha.is_zero() or relation.gamma.is_zero():
        raise DegenerateRelation(
            "relation for M degenerated (alpha or gamma identically zero)"
        )
    if poly_is_square(relation.discriminant()):
        raise DegenerateRelation(
            "discriminant is a polynomial square: M would be rational, verdict withheld"
        )


def _residual_pair(
    relation: QuadraticRelation, product: Mat2, ak: Fraction
) -> tuple[Poly, Poly]:
    a_mat, b_mat, c_mat, d_mat = product.entries()
    ak2 = ak * ak
    al, be, ga = relation.alpha, relation.beta, relation.gamma
    residual_p = al * d_mat - be * c_mat - (ga * a_mat).scale(ak2)
    residual_q = ga * (c_mat + b_mat.scale(ak2))
    return residual_p, residual_q


_SAMPLE_POINT = complex(0.37, 1.31)


def _report(relation: QuadraticRelation, product: Mat2, ak: Fraction, ell: int) -> VerificationReport:
    residual_p, residual_q = _residual_pair(relation, product, ak)
    holds = residual_p.is_zero() and residual_q.is_zero()
    diagnostics = {
        "alpha_degree": relation.alpha.degree,
        "beta_degree": relation.beta.degree,
        "gamma_degree": relation.gamma.degree,
        "residual_P_degree": residual_p.degree,
        "residual_Q_degree": residual_q.degree,
        "sample_point": _SAMPLE_POINT,
        "residual_P_sample": abs(residual_p(_SAMPLE_POINT)),
        "residual_Q_sample": abs(residual_q(_SAMPLE_POINT)),
    }
    return VerificationReport(ell, residual_p, residual_q, holds, diagnostics)


def verify_main_identity(seq: JacobiSequence, ell: int) -> VerificationReport:
    """Decide the second-solution identity at the candidate first length ell.

    The sequence must be normalized (nonempty preperiodic block ending with
    the last periodic pair) and ell must lie in 1 .. p-2.  `holds` is true
    exactly when both residual polynomials vanish identically, which happens
    if and only if the period is doubly palindromic with first length ell.

    Raises:
        NotNormalized: the sequence is not in canonical form.
        IndexOutOfRange: ell outside 1 .. p-2.
        DegenerateRelation: the relation for M collapsed or its discriminant
            is a polynomial square; no verdict is possible.
    """
    p = seq.p
    if not 1 <= ell <= p - 2:
        raise IndexOutOfRange(f"need 1 <= ell <= p-2 = {p - 2}, got ell={ell}")
    relation, t1 = _relation_for_sequence(seq)
    _guard_relation(relation)
    t3 = build_T3(seq)
    ak = seq.preperiodic[-1].a
    product = t3 @ build_T2(seq.periodic, ell) @ t1
    return _report(relation, product, ak, ell)


def verify_splits(seq: JacobiSequence) -> dict[int, VerificationReport]:
    """Run verify_main_identity for every ell in 1 .. p-2, sharing setup work.

    The preperiodic matrices and the relation for M do not depend on ell, so
    batch verification computes them once.  Returns reports keyed by ell in
    ascending order.
    """
    relation, t1 = _relation_for_sequence(seq)
    _guard_relation(relation)
    t3 = build_T3(seq)
    ak = seq.preperiodic[-1].a
    out: dict[int, VerificationReport] = {}
    for ell in range(1, seq.p - 1):
        product = t3 @ build_T2(seq.periodic, ell) @ t1
        out[ell] = _report(relation, product, ak, ell)
    return out


@dataclass(frozen=True)
class ReverseObstructionReport:
    """Asymptotic test of whether 1/(ak^2 * Mtilde) behaves like an m-function.

    `decay_constant` is the fitted limit of i*y*Mtilde(i*y) for large y; for
    an obstructed representation with one preperiodic pair (alpha_1, beta_1)
    over a one-pair period it approaches -1/(1 - alpha_1^2/a_p^2).
    """

    is_m_like: bool
    decay_constant: complex
    fit_deviation: float
    tail_magnitude: float


def reverse_asymptotics(
    seq: JacobiSequence,
    heights: Sequence[float] = (1e2, 1e3, 1e4),
    fit_tolerance: float = 1e-4,
    tail_tolerance: float = 1e-2,
) -> ReverseObstructionReport:
    """Probe the reversed identity numerically along z = i*y for large y.

    Evaluates w(z) = 1/(ak^2 * Mtilde(z)) at the given heights and tests the
    m-function asymptotics w ~ -1/z: the imaginary part of i*y*w(i*y) + 1
    must fit c/y with deviation below `fit_tolerance`, and the full modulus
    of i*y*w(i*y) + 1 at the largest height must stay below
    `tail_tolerance`.  (The magnitude check matters: streams with symmetric
    b-entries can have an identically real i*y*w(i*y) + 1, which would make
    the imaginary-part fit pass vacuously.)

    A purely periodic sequence is first rewritten with one explicit period
    as its preperiodic block.  A nonempty preperiodic block is used exactly
    as given, even when it does not end with the last periodic pair: the
    whole point of the probe is to detect such representations.

    Raises:
        NumericInstability: the evaluation points hit a pole of the relation.
    """
    from . import mfun  # local import: mfun builds on this module

    if seq.k == 0:
        seq = normalize_kp(seq)
    t_pre = conj_transfer(seq.preperiodic, seq.k)
    relation = pullback_quadratic(periodic_quadratic(seq.periodic), t_pre)
    if relation.alpha.is_zero() or relation.gamma.is_zero():
        raise DegenerateRelation("relation for M degenerated")
    ak = seq.preperiodic[-1].a
    ak2 = float(ak * ak)

    ys = sorted(float(y) for y in heights)
    g_values = []
    decay = complex(0.0)
    try:
        for y in ys:
            z = complex(0.0, y)
            m_val = mfun.eval_m(seq, z)
            second = second_solution_value(relation, m_val, z)
            w = 1.0 / (ak2 * second)
            g_values.append(1j * y * w + 1.0)
            decay = 1j * y * second
    except (DivisionByZero, ZeroDivisionError, OverflowError) as exc:
        raise NumericInstability(f"asymptotic probe failed: {exc}") from exc

    # least-squares fit of Im(g) ~ c/y over the sampled heights
    num = sum(g.imag / y for g, y in zip(g_values, ys))
    den = sum(1.0 / (y * y) for y in ys)
    c_hat = num / den if den else 0.0
    fit_deviation = max(abs(g.imag - c_hat / y) for g, y in zip(g_values, ys))
    tail_magnitude = abs(g_values[-1])
    is_m_like = fit_deviation < fit_tolerance and tail_magnitude < tail_tolerance
    return ReverseObstructionReport(is_m_like, decay, fit_deviation, tail_magnitude)


def verify_reverse_obstruction(seq: JacobiSequence) -> bool:
    """True iff 1/(ak^2 * Mtilde) passes the m-function asymptotic test.

    This is the checkable necessary condition for the reversed identity; it
    passes for purely periodic representations and fails when a genuine
    preperiodic block distorts the decay at infinity.
    """
    return reverse_asymptotics(seq).is_m_like


def numeric_identity_residual(seq: JacobiSequence, ell: int, z) -> float:
    """|1/(ak^2 * Mtilde(z)) - f_{T3 T2 T1}(M(z))| at one point.

    A floating-point cross-check of the exact verdict; the exact residual
    polynomials remain the source of truth.  In double precision the
    residual is limited by the conditioning of the Moebius map (its
    derivative grows like the squared transfer-matrix norm); pass an
    extended-precision point (e.g. mpmath.mpc) for sharper checks.
    """
    return numeric_identity_check(seq, ell, z)["residual"]


def numeric_identity_check(seq: JacobiSequence, ell: int, z, tolerance: float = 1e-8) -> dict:
    """Pointwise cross-check of the identity with a conditioning budget.

    Returns a dict with the forward residual, the Moebius derivative
    magnitude 1/|C(z)M + D(z)|^2 (the error amplification of the right
    side), and `ok`: residual within `tolerance` or within the
    double-precision budget that the conditioning allows.
    """
    from . import mfun  # local import: mfun builds on this module
    from .exactalg import mobius_apply

    relation, t1 = _relation_for_sequence(seq)
    ak = seq.preperiodic[-1].a
    product = build_T3(seq) @ build_T2(seq.periodic, ell) @ t1
    m_val = mfun.eval_m(seq, z)
    second = second_solution_value(relation, m_val, z)
    lhs = 1 / (Fraction(ak * ak) * second)
    rhs = mobius_apply(product, m_val, z)
    residual = abs(lhs - rhs)
    den = product.a21(z) * m_val + product.a22(z)
    condition = float(1 / abs(den) ** 2) if den != 0 else float("inf")
    budget = max(tolerance, 1e-13 * (1.0 + condition))
    return {
        "residual": residual,
        "moebius_condition": condition,
        "tolerance": tolerance,
        "ok": bool(residual <= budget),
    }
