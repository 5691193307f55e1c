"""Exhaustive operator-identity verification on exact graded matrices.

Every check here is an exact equality of per-degree blocks (or of individual
blade images); a failing check always carries a witness blade.  The suite is
total: a corrupted structure table produces fail reports, never exceptions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from math import comb

from . import contact, operators
from .contact import ALPHAS, PhiStarTable, cyclic, epsilon
from .exterior import ModelDims, Multivector, wedge
from .operators import GradedOperator, anticommutator, commutator

SUPPORTED_RANKS = (1, 2, 3)


@dataclass
class Witness:
    """Locates the first failing blade of an identity."""

    member: str
    degree: int
    blade: str
    lhs: str
    rhs: str

    def to_dict(self) -> dict:
        return {
            "member": self.member,
            "degree": self.degree,
            "blade": self.blade,
            "lhs": self.lhs,
            "rhs": self.rhs,
        }


@dataclass
class IdentityReport:
    name: str
    statement: str
    passed: bool
    max_degree: int
    witness: Witness | None = None

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "statement": self.statement,
            "passed": self.passed,
            "max_degree": self.max_degree,
            "witness": self.witness.to_dict() if self.witness else None,
        }


@dataclass
class OperatorSet:
    """Lazily built cache of all operators for one model."""

    dims: ModelDims
    table: PhiStarTable
    _cache: dict = field(default_factory=dict)

    def __post_init__(self):
        self.full = operators.full_basis(self.dims)
        self.hor = operators.horizontal_basis(self.dims)

    def _get(self, key, builder):
        if key not in self._cache:
            self._cache[key] = builder()
        return self._cache[key]

    def l(self, a):
        return self._get(("l", a), lambda: operators.op_l(self.dims, a, self.full))

    def lam(self, a):
        return self._get(("lam", a), lambda: operators.op_lambda(self.dims, a, self.full))

    def e(self, a):
        return self._get(("e", a), lambda: self.l(a).compose(self.lam(a)))

    def L_full(self, a):
        return self._get(
            ("Lf", a), lambda: operators.op_L(self.dims, a, self.full, self.table)
        )

    def Lambda_star(self, a):
        return self._get(
            ("Lsf", a),
            lambda: operators.op_Lambda_star(self.dims, a, self.full, self.table),
        )

    def Lambda_full(self, a):
        return self._get(("Lcf", a), lambda: operators.op_Lambda(self.dims, a, self.full))

    def L(self, a):
        return self._get(
            ("L", a), lambda: operators.op_L(self.dims, a, self.hor, self.table)
        )

    def Lam(self, a):
        return self._get(("Lam", a), lambda: operators.op_Lambda(self.dims, a, self.hor))

    def K(self, a):
        return self._get(("K", a), lambda: operators.op_K(self.dims, a, self.hor))

    def K_s(self, a, s):
        return self._get(
            ("Ks", a, s), lambda: operators.op_K_s(self.dims, a, s, self.hor, self.table)
        )

    def I(self, a):
        return self._get(("I", a), lambda: operators.op_I(self.dims, a, self.hor, self.table))

    @property
    def H(self):
        return self._get("H", lambda: operators.op_H(self.dims, self.hor))

    @property
    def id_full(self):
        return self._get("idf", lambda: GradedOperator.identity(self.full))

    @property
    def id_hor(self):
        return self._get("idh", lambda: GradedOperator.identity(self.hor))

    @property
    def zero_full(self):
        return self._get("0f", lambda: GradedOperator.zero(self.full))

    def zero_hor(self, shift=0):
        return self._get(("0h", shift), lambda: GradedOperator.zero(self.hor, shift))


def _label(dims: ModelDims, blade) -> str:
    return contact.format_blade(dims, blade)


def _op_members_report(
    name: str,
    statement: str,
    dims: ModelDims,
    members: list[tuple[str, GradedOperator, GradedOperator]],
    max_degree: int,
) -> IdentityReport:
    for desc, lhs, rhs in members:
        diff = lhs.first_difference(rhs)
        if diff is not None:
            k, blade, got, expected = diff
            witness = Witness(desc, k, _label(dims, blade), repr(got), repr(expected))
            return IdentityReport(name, statement, False, max_degree, witness)
    return IdentityReport(name, statement, True, max_degree)


def _check_lambda_l(ops: OperatorSet) -> IdentityReport:
    members = []
    for a in ALPHAS:
        for b in ALPHAS:
            target = ops.id_full if a == b else ops.zero_full
            members.append(
                (f"{{lambda_{a}, l_{b}}}", anticommutator(ops.lam(a), ops.l(b)), target)
            )
    return _op_members_report(
        "anticommutator_lambda_l",
        "{lambda_a, l_b} = delta_ab * id",
        ops.dims,
        members,
        ops.full.max_degree,
    )


def _check_wedge_contraction_nilpotence(ops: OperatorSet) -> IdentityReport:
    members = []
    for a in ALPHAS:
        for b in ALPHAS:
            members.append(
                (
                    f"{{l_{a}, l_{b}}}",
                    anticommutator(ops.l(a), ops.l(b)),
                    GradedOperator.zero(ops.full, 2),
                )
            )
            members.append(
                (
                    f"{{lambda_{a}, lambda_{b}}}",
                    anticommutator(ops.lam(a), ops.lam(b)),
                    GradedOperator.zero(ops.full, -2),
                )
            )
    return _op_members_report(
        "anticommutator_nilpotence",
        "{l_a, l_b} = 0 and {lambda_a, lambda_b} = 0",
        ops.dims,
        members,
        ops.full.max_degree,
    )


def _check_projections(ops: OperatorSet) -> IdentityReport:
    members = []
    for a in ALPHAS:
        members.append((f"e_{a}^2 = e_{a}", ops.e(a).compose(ops.e(a)), ops.e(a)))
        for b in ALPHAS:
            if a < b:
                members.append(
                    (f"[e_{a}, e_{b}]", commutator(ops.e(a), ops.e(b)), ops.zero_full)
                )
    return _op_members_report(
        "eta_projections",
        "e_a = l_a lambda_a is idempotent; the three projections commute",
        ops.dims,
        members,
        ops.full.max_degree,
    )


def _check_cube_isomorphisms(ops: OperatorSet) -> IdentityReport:
    """The wedge/contraction pair restricts to inverse isomorphisms between
    the eta_a-free and eta_a-containing sectors, which therefore have the
    binomial dimensions."""
    dims = ops.dims
    name = "cube_isomorphisms"
    statement = (
        "lambda_a l_a = id off the eta_a sector, l_a lambda_a = id on it; "
        "sector dimensions are C(4n, k - eta-weight)"
    )
    for a in ALPHAS:
        eta_idx = contact.eta_index(dims, a)
        for k in ops.full.degrees():
            for blade in ops.full.blades(k):
                mv = Multivector.blade(blade)
                if eta_idx in blade:
                    image = ops.l(a).apply(ops.lam(a).apply(mv))
                else:
                    image = ops.lam(a).apply(ops.l(a).apply(mv))
                if image != mv:
                    witness = Witness(
                        f"alpha={a}", k, _label(dims, blade), repr(image), repr(mv)
                    )
                    return IdentityReport(name, statement, False, ops.full.max_degree, witness)
    # Sector dimension count: blades sorted by eta-pattern.
    for k in ops.full.degrees():
        counts: dict[tuple[int, int, int], int] = {}
        for blade in ops.full.blades(k):
            pattern = tuple(
                1 if contact.eta_index(dims, a) in blade else 0 for a in ALPHAS
            )
            counts[pattern] = counts.get(pattern, 0) + 1
        for pattern, count in counts.items():
            expected = comb(dims.horizontal_dim, k - sum(pattern))
            if count != expected:
                witness = Witness(
                    f"k={k}, sector={pattern}", k, "-", str(count), str(expected)
                )
                return IdentityReport(name, statement, False, ops.full.max_degree, witness)
    return IdentityReport(name, statement, True, ops.full.max_degree)


def _check_lambda_routes(ops: OperatorSet) -> IdentityReport:
    members = [
        (
            f"alpha={a}",
            ops.Lambda_star(a),
            ops.Lambda_full(a),
        )
        for a in ALPHAS
    ]
    return _op_members_report(
        "adjoint_via_star_equals_contraction",
        "star L_a star = sum_s (i_X i_phi_a X + i_phi_b X i_phi_c X)",
        ops.dims,
        members,
        ops.full.max_degree,
    )


def _check_projection_commutation(ops: OperatorSet) -> IdentityReport:
    members = []
    for a in ALPHAS:
        for m in ALPHAS:
            members.append(
                (
                    f"[L_{a}, e_{m}]",
                    commutator(ops.L_full(a), ops.e(m)),
                    GradedOperator.zero(ops.full, 2),
                )
            )
            members.append(
                (
                    f"[Lambda_{a}, e_{m}]",
                    commutator(ops.Lambda_full(a), ops.e(m)),
                    GradedOperator.zero(ops.full, -2),
                )
            )
    return _op_members_report(
        "wedge_adjoint_commute_with_projections",
        "[L_a, e_m] = 0 and [Lambda_a, e_m] = 0",
        ops.dims,
        members,
        ops.full.max_degree,
    )


def _check_wedge_pairs_commute(ops: OperatorSet) -> IdentityReport:
    members = []
    for a in ALPHAS:
        for b in ALPHAS:
            if a < b:
                members.append(
                    (
                        f"[L_{a}, L_{b}]",
                        commutator(ops.L_full(a), ops.L_full(b)),
                        GradedOperator.zero(ops.full, 4),
                    )
                )
                members.append(
                    (
                        f"[Lambda_{a}, Lambda_{b}]",
                        commutator(ops.Lambda_full(a), ops.Lambda_full(b)),
                        GradedOperator.zero(ops.full, -4),
                    )
                )
    return _op_members_report(
        "wedge_pairs_commute",
        "[L_a, L_b] = 0 and [Lambda_a, Lambda_b] = 0",
        ops.dims,
        members,
        ops.full.max_degree,
    )


def _check_sector_preservation(ops: OperatorSet) -> IdentityReport:
    dims = ops.dims
    name = "horizontal_sector_preserved"
    statement = "L_a, Lambda_a, K_a, I_a send eta-free blades to eta-free blades"
    horizontal = dims.horizontal_dim
    candidates = [(f"L_{a}", ops.L_full(a)) for a in ALPHAS]
    candidates += [(f"Lambda_{a}", ops.Lambda_full(a)) for a in ALPHAS]
    candidates += [(f"star-Lambda_{a}", ops.Lambda_star(a)) for a in ALPHAS]
    for desc, op in candidates:
        for k in ops.hor.degrees():
            for blade in ops.hor.blades(k):
                image = op.apply(Multivector.blade(blade))
                for img_blade in image.terms:
                    if any(i >= horizontal for i in img_blade):
                        witness = Witness(
                            desc, k, _label(dims, blade), repr(image), "eta-free image"
                        )
                        return IdentityReport(
                            name, statement, False, ops.hor.max_degree, witness
                        )
    # K and I are materialized on the horizontal basis, where closure of the
    # images is enforced by construction; nothing further to check for them.
    return IdentityReport(name, statement, True, ops.hor.max_degree)


def _check_l_lambda_h(ops: OperatorSet) -> IdentityReport:
    members = [
        (f"alpha={a}", commutator(ops.L(a), ops.Lam(a)), -ops.H) for a in ALPHAS
    ]
    return _op_members_report(
        "weight_commutator",
        "[L_a, Lambda_a] = -H on the eta-free sector",
        ops.dims,
        members,
        ops.hor.max_degree,
    )


def _check_l_lambda_k(ops: OperatorSet) -> IdentityReport:
    members = []
    for a in ALPHAS:
        _, b, c = cyclic(a)
        members.append((f"[L_{a}, Lambda_{b}] = K_{c}", commutator(ops.L(a), ops.Lam(b)), ops.K(c)))
        members.append(
            (f"[L_{a}, Lambda_{c}] = -K_{b}", commutator(ops.L(a), ops.Lam(c)), -ops.K(b))
        )
    return _op_members_report(
        "mixed_commutators",
        "[L_a, Lambda_b] = K_c and [L_a, Lambda_c] = -K_b for cyclic (a, b, c)",
        ops.dims,
        members,
        ops.hor.max_degree,
    )


def _check_h_weights(ops: OperatorSet) -> IdentityReport:
    members = []
    for a in ALPHAS:
        members.append((f"[K_{a}, H]", commutator(ops.K(a), ops.H), ops.zero_hor()))
        members.append((f"[L_{a}, H]", commutator(ops.L(a), ops.H), ops.L(a).scale(2)))
        members.append(
            (f"[Lambda_{a}, H]", commutator(ops.Lam(a), ops.H), ops.Lam(a).scale(-2))
        )
    return _op_members_report(
        "weight_grading",
        "[K_a, H] = 0, [L_a, H] = 2 L_a, [Lambda_a, H] = -2 Lambda_a",
        ops.dims,
        members,
        ops.hor.max_degree,
    )


def _check_bracket_closure(ops: OperatorSet) -> IdentityReport:
    members = []
    for a in ALPHAS:
        _, b, c = cyclic(a)
        members.append((f"[K_{a}, L_{a}]", commutator(ops.K(a), ops.L(a)), ops.zero_hor(2)))
        members.append(
            (f"[K_{a}, Lambda_{a}]", commutator(ops.K(a), ops.Lam(a)), ops.zero_hor(-2))
        )
        members.append(
            (f"[K_{a}, L_{b}]", commutator(ops.K(a), ops.L(b)), ops.L(c).scale(-2))
        )
        members.append(
            (f"[K_{a}, L_{c}]", commutator(ops.K(a), ops.L(c)), ops.L(b).scale(2))
        )
        members.append(
            (f"[K_{a}, Lambda_{b}]", commutator(ops.K(a), ops.Lam(b)), ops.Lam(c).scale(-2))
        )
        members.append(
            (f"[K_{a}, Lambda_{c}]", commutator(ops.K(a), ops.Lam(c)), ops.Lam(b).scale(2))
        )
        members.append(
            (f"[K_{a}, K_{b}]", commutator(ops.K(a), ops.K(b)), ops.K(c).scale(-2))
        )
    return _op_members_report(
        "bracket_closure",
        "[K_a, L_a] = 0, [K_a, Lambda_a] = 0, [K_a, L_b] = -2 L_c, [K_a, L_c] = 2 L_b, "
        "[K_a, Lambda_b] = -2 Lambda_c, [K_a, Lambda_c] = 2 Lambda_b, [K_a, K_b] = -2 K_c",
        ops.dims,
        members,
        ops.hor.max_degree,
    )


def _check_substitution_recursion(ops: OperatorSet) -> IdentityReport:
    """K_a K_{a,s} = (s+1) K_{a,s+1} - (k-s+1) K_{a,s-1}, blockwise in k.

    The right side's second coefficient depends on the degree, so the check
    runs per degree block.
    """
    dims = ops.dims
    name = "substitution_recursion"
    statement = "K_a K_{a,s} = (s+1) K_{a,s+1} - (k-s+1) K_{a,s-1} on each degree k"
    for a in ALPHAS:
        K = ops.K(a)
        for k in ops.hor.degrees():
            for s in range(1, k + 1):
                lower = ops.K_s(a, s - 1)
                mid = ops.K_s(a, s)
                upper = ops.K_s(a, s + 1)
                for blade in ops.hor.blades(k):
                    mv = Multivector.blade(blade)
                    lhs = K.apply(mid.apply(mv))
                    rhs = Fraction(s + 1) * upper.apply(mv) - Fraction(
                        k - s + 1
                    ) * lower.apply(mv)
                    if lhs != rhs:
                        witness = Witness(
                            f"alpha={a}, k={k}, s={s}",
                            k,
                            _label(dims, blade),
                            repr(lhs),
                            repr(rhs),
                        )
                        return IdentityReport(name, statement, False, ops.hor.max_degree, witness)
    return IdentityReport(name, statement, True, ops.hor.max_degree)


def _check_substitution_endpoints(ops: OperatorSet) -> IdentityReport:
    """Zero substitutions is the identity, one substitution is K_a, and
    substituting every factor of a degree-k blade is the full pullback."""
    dims = ops.dims
    name = "substitution_endpoints"
    statement = "K_{a,0} = id; K_{a,1} = K_a; K_{a,k} = I_a on degree k"
    for a in ALPHAS:
        members = [
            (f"K_{a},0 = id", ops.K_s(a, 0), ops.id_hor),
            (f"K_{a},1 = K_{a}", ops.K_s(a, 1), ops.K(a)),
        ]
        for desc, lhs, rhs in members:
            diff = lhs.first_difference(rhs)
            if diff is not None:
                k, blade, got, expected = diff
                witness = Witness(desc, k, _label(dims, blade), repr(got), repr(expected))
                return IdentityReport(name, statement, False, ops.hor.max_degree, witness)
        for k in ops.hor.degrees():
            top = ops.K_s(a, k)
            for blade in ops.hor.blades(k):
                mv = Multivector.blade(blade)
                lhs = top.apply(mv)
                rhs = ops.I(a).apply(mv)
                if lhs != rhs:
                    witness = Witness(
                        f"K_{a},{k} = I_{a}", k, _label(dims, blade), repr(lhs), repr(rhs)
                    )
                    return IdentityReport(name, statement, False, ops.hor.max_degree, witness)
    return IdentityReport(name, statement, True, ops.hor.max_degree)


def _check_quaternion_relations(ops: OperatorSet) -> IdentityReport:
    """On odd degrees the full substitutions generate the quaternions.

    Composition is written apply-first-then-second: doing I_a and then I_b
    equals I_c for cyclic (a, b, c), the reverse order gives -I_c, and each
    I_a squares to minus the identity; on even degrees the squares are +id.
    """
    dims = ops.dims
    name = "quaternion_relations"
    statement = (
        "odd degrees: I_a^2 = -id, I_a-then-I_b = I_c, I_b-then-I_a = -I_c; "
        "even degrees: I_a^2 = id"
    )
    for k in ops.hor.degrees():
        odd = k % 2 == 1
        for a in ALPHAS:
            _, b, c = cyclic(a)
            for blade in ops.hor.blades(k):
                mv = Multivector.blade(blade)
                square = ops.I(a).apply(ops.I(a).apply(mv))
                expected = -mv if odd else mv
                if square != expected:
                    witness = Witness(
                        f"I_{a}^2, k={k}", k, _label(dims, blade), repr(square), repr(expected)
                    )
                    return IdentityReport(name, statement, False, ops.hor.max_degree, witness)
                if odd:
                    forward = ops.I(b).apply(ops.I(a).apply(mv))
                    target = ops.I(c).apply(mv)
                    if forward != target:
                        witness = Witness(
                            f"I_{a} then I_{b} = I_{c}, k={k}",
                            k,
                            _label(dims, blade),
                            repr(forward),
                            repr(target),
                        )
                        return IdentityReport(
                            name, statement, False, ops.hor.max_degree, witness
                        )
                    backward = ops.I(a).apply(ops.I(b).apply(mv))
                    if backward != -target:
                        witness = Witness(
                            f"I_{b} then I_{a} = -I_{c}, k={k}",
                            k,
                            _label(dims, blade),
                            repr(backward),
                            repr(-target),
                        )
                        return IdentityReport(
                            name, statement, False, ops.hor.max_degree, witness
                        )
    return IdentityReport(name, statement, True, ops.hor.max_degree)


def _check_xi_consistency(ops: OperatorSet) -> IdentityReport:
    dims = ops.dims
    name = "xi_form_consistency"
    statement = (
        "explicit horizontal sum = (Phi_a + 2 eta_b ^ eta_c)/2; i_xi Xi_a = 0; "
        "Xi_a is eta-free"
    )
    for a in ALPHAS:
        explicit = contact.xi_form(dims, a, ops.table)
        via_phi = contact.xi_form_from_fundamental(dims, a)
        if explicit != via_phi:
            witness = Witness(f"alpha={a}", 2, "-", repr(explicit), repr(via_phi))
            return IdentityReport(name, statement, False, 2, witness)
        for m in ALPHAS:
            contracted = contact.frame_interior(
                dims, contact.eta_index(dims, m), explicit
            )
            if contracted:
                witness = Witness(f"i_xi_{m} Xi_{a}", 2, "-", repr(contracted), "0")
                return IdentityReport(name, statement, False, 2, witness)
        if any(i >= dims.horizontal_dim for blade in explicit.terms for i in blade):
            witness = Witness(f"alpha={a}", 2, "-", repr(explicit), "eta-free form")
            return IdentityReport(name, statement, False, 2, witness)
    return IdentityReport(name, statement, True, 2)


def structure_pairs(dims: ModelDims, alpha: int) -> list[tuple[int, int]]:
    """Frame bivector slots on which the fundamental form pairs to -1,
    in the cyclic order used by its defining table."""
    _, beta, gamma = cyclic(alpha)
    pairs = []
    for s in range(1, dims.n + 1):
        pairs.append(
            (contact.zeta_index(dims, s), contact.phi_zeta_index(dims, alpha, s))
        )
        pairs.append(
            (
                contact.phi_zeta_index(dims, beta, s),
                contact.phi_zeta_index(dims, gamma, s),
            )
        )
    pairs.append((contact.eta_index(dims, beta), contact.eta_index(dims, gamma)))
    return pairs


def _check_fundamental_pairings(ops: OperatorSet) -> IdentityReport:
    """The fundamental form pairs to -1 exactly on the structure bivectors
    (in cyclic order) and to zero on every other frame bivector.  The
    explicit horizontal sum is used, so table corruption shows up here."""
    dims = ops.dims
    name = "fundamental_form_pairings"
    statement = "<Phi_a, V ^ W> = -1 on the structure pairs, 0 on all other frame bivectors"
    for a in ALPHAS:
        _, beta, gamma = cyclic(a)
        etas = wedge(
            Multivector.blade((contact.eta_index(dims, beta),)),
            Multivector.blade((contact.eta_index(dims, gamma),)),
        )
        phi = 2 * contact.xi_form(dims, a, ops.table) - 2 * etas
        listed = structure_pairs(dims, a)
        listed_sets = {frozenset(p) for p in listed}
        for i, j in listed:
            kvec = wedge(Multivector.blade((i,)), Multivector.blade((j,)))
            value = contact.pair_frame(dims, phi, kvec)
            if value != -1:
                witness = Witness(
                    f"alpha={a}, pair=({i},{j})", 2, "-", str(value), "-1"
                )
                return IdentityReport(name, statement, False, 2, witness)
        for i, j in combinations(range(dims.dim), 2):
            if frozenset((i, j)) in listed_sets:
                continue
            value = contact.pair_frame(dims, phi, Multivector.blade((i, j)))
            if value != 0:
                witness = Witness(f"alpha={a}, pair=({i},{j})", 2, "-", str(value), "0")
                return IdentityReport(name, statement, False, 2, witness)
    return IdentityReport(name, statement, True, 2)


def _check_frame_evaluation(ops: OperatorSet) -> IdentityReport:
    """Contractions of coframe elements by frame vectors are diagonal with
    the recorded signs (in particular i_{phi_a X_s} phi_a* zeta_t = -delta_st)."""
    dims = ops.dims
    name = "frame_evaluation_table"
    statement = "i_{V_j} rho_i = eval_diag[i] * delta_ij over all frame/coframe slots"
    diag = contact.eval_diag(dims)
    for i in range(dims.dim):
        rho = Multivector.blade((i,))
        for j in range(dims.dim):
            value = contact.frame_interior(dims, j, rho)
            expected = (
                Multivector.scalar(diag[i]) if i == j else Multivector.zero()
            )
            if value != expected:
                witness = Witness(f"rho={i}, V={j}", 1, "-", repr(value), repr(expected))
                return IdentityReport(name, statement, False, 1, witness)
    return IdentityReport(name, statement, True, 1)


def _check_pullback_composition(ops: OperatorSet) -> IdentityReport:
    dims = ops.dims
    table = ops.table
    name = "pullback_composition"
    statement = (
        "phi_a* phi_b* = -phi_c*, phi_b* phi_a* = phi_c* on eta-free one-forms; "
        "phi_a*^2 = -id there; eta rules follow the antisymmetric symbol"
    )

    def apply2(first: int, then: int, mv: Multivector) -> Multivector:
        return contact.phi_star(table, then, contact.phi_star(table, first, mv))

    for a in ALPHAS:
        _, b, c = cyclic(a)
        for idx in range(dims.horizontal_dim):
            one_form = Multivector.blade((idx,))
            image_c = contact.phi_star(table, c, one_form)
            got = apply2(b, a, one_form)  # phi_a* after phi_b*
            if got != -image_c:
                witness = Witness(
                    f"phi_{a}* phi_{b}* on slot {idx}", 1, contact.coframe_label(dims, idx),
                    repr(got), repr(-image_c),
                )
                return IdentityReport(name, statement, False, 1, witness)
            got = apply2(a, b, one_form)  # phi_b* after phi_a*
            if got != image_c:
                witness = Witness(
                    f"phi_{b}* phi_{a}* on slot {idx}", 1, contact.coframe_label(dims, idx),
                    repr(got), repr(image_c),
                )
                return IdentityReport(name, statement, False, 1, witness)
            got = apply2(a, a, one_form)
            if got != -one_form:
                witness = Witness(
                    f"phi_{a}*^2 on slot {idx}", 1, contact.coframe_label(dims, idx),
                    repr(got), repr(-one_form),
                )
                return IdentityReport(name, statement, False, 1, witness)
    # eta_a o phi_b = sum_c eps(a, b, c) eta_c, slot by slot.
    for a in ALPHAS:
        for b in ALPHAS:
            eta_a = Multivector.blade((contact.eta_index(dims, a),))
            got = contact.phi_star(table, b, eta_a)
            expected = Multivector.zero()
            for g in ALPHAS:
                sign = epsilon(a, b, g)
                if sign:
                    expected = expected + Multivector.blade(
                        (contact.eta_index(dims, g),), sign
                    )
            if got != expected:
                witness = Witness(
                    f"phi_{b}* eta_{a}", 1, f"eta{a}", repr(got), repr(expected)
                )
                return IdentityReport(name, statement, False, 1, witness)
    return IdentityReport(name, statement, True, 1)


def _check_frame_duality(ops: OperatorSet) -> IdentityReport:
    """Coframe pullback = transpose-dual of the frame action through the
    evaluation signs: P[j][i] * d_j = d_i * F[i][j]."""
    dims = ops.dims
    name = "pullback_frame_duality"
    statement = "pullback table is the transpose-dual of the frame action"
    diag = contact.eval_diag(dims)
    for a in ALPHAS:
        pull = [[0] * dims.dim for _ in range(dims.dim)]
        for i in range(dims.dim):
            hit = ops.table.image(a, i)
            if hit is not None:
                j, sign = hit
                pull[j][i] = sign
        for i in range(dims.dim):
            for j in range(dims.dim):
                frame_coeff = contact.frame_phi_coefficient(dims, a, i, j)
                if pull[j][i] * diag[j] != diag[i] * frame_coeff:
                    witness = Witness(
                        f"alpha={a}, (i,j)=({i},{j})", 1, "-",
                        str(pull[j][i] * diag[j]), str(diag[i] * frame_coeff),
                    )
                    return IdentityReport(name, statement, False, 1, witness)
    return IdentityReport(name, statement, True, 1)


_CHECKS = [
    _check_lambda_l,
    _check_wedge_contraction_nilpotence,
    _check_projections,
    _check_cube_isomorphisms,
    _check_lambda_routes,
    _check_projection_commutation,
    _check_wedge_pairs_commute,
    _check_sector_preservation,
    _check_l_lambda_h,
    _check_l_lambda_k,
    _check_h_weights,
    _check_bracket_closure,
    _check_substitution_recursion,
    _check_substitution_endpoints,
    _check_quaternion_relations,
    _check_xi_consistency,
    _check_fundamental_pairings,
    _check_frame_evaluation,
    _check_pullback_composition,
    _check_frame_duality,
]


def verify_identities(n: int, table: PhiStarTable | None = None) -> list[IdentityReport]:
    """Run the whole identity suite for rank n; reports sorted by name.

    A sign-corrupted table may be passed to exercise the negative-control
    path; failures come back as reports with witnesses, never exceptions.
    """
    if n not in SUPPORTED_RANKS:
        raise ValueError(f"rank n must be one of {SUPPORTED_RANKS}")
    dims = ModelDims(n)
    ops = OperatorSet(dims, table if table is not None else PhiStarTable.build(dims))
    return sorted((check(ops) for check in _CHECKS), key=lambda r: r.name)
