"""
Conjugation of the birational germ G to its Favre normal form F

The conjugacy phi = (phi1, phi2) solves F o phi = phi o G. The second component is
explicit, phi2 = C z2 (1 + mu) with

    1 + mu = prod_{j>=0} (1 + h o G^j)^(r / k^(j+1)),
    h = (sum_{0<i<l} a_i z2^i + z1 z2^(l-1) + a_{l+K} z2^(l+K)) / a0,

and the first component equation is linear in the unknowns b_{p+q+1..sigma}, c and
the coefficients A_ij of phi1:

    R = sum_ij A_ij (lam z1^i z2^j phi2^sigma - G1^i G2^j) + sum_m b_m phi2^m + c phi2^(sigma k/(k-1)).

The unknowns on E_inf together with the b's (and c) form a square core system; the
remaining coefficients of phi1 are pinned by a sweep over every bidegree up to the order.
"""

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from kato.algebra.linalg import row_reduce, solve_square
from kato.algebra.scalars import root_power
from kato.algebra.series import TruncSeries2, power_cache
from kato.combinatorics.signature import BranchSignature
from kato.germs.families import BiratGerm, FavreGerm
from kato.germs.forms import birat_generic_form
from kato.normalform.lattice import e_infty
from kato.utils.errors import InvalidInput, SingularSystem
from kato.utils.info import RESIDUAL_TOL, ROOT_TOL
from kato.utils.utils import log_info, log_warning

Monomial = Tuple[int, int]


def default_order(sig: BranchSignature) -> int:
    return 3 * sig.sigma + sig.kS


def _shift(f: TruncSeries2, i: int, j: int) -> TruncSeries2:
    r"""
    f * z1^i z2^j
    """
    order = f.order
    return TruncSeries2._raw(f.field, order, {(a + i, b + j): c for (a, b), c in f.coeffs.items()
                                              if a + b + i + j <= order})


def conjugation_constant(g: BiratGerm, eps=1):
    r"""
    C = eps a0^(r/(k-1)), so that C^(k-1) = a0^r
    """
    return g.field(eps) * root_power(g.field, g.a0, Fraction(g.sig.r, g.sig.kS - 1))


def leading_coefficients(g: BiratGerm, eps=1) -> List:
    r"""
    delta / (C^j k a0) for j = 1..l-1, the diagonal of the triangular map a -> b
    """
    sig = g.sig
    C = conjugation_constant(g, eps)
    return [sig.delta / (C ** j * sig.kS * g.a0) for j in range(1, sig.l)]


def mu_series(g: BiratGerm, eps=1, order: Optional[int] = None) -> TruncSeries2:
    r"""
    the truncated product 1 + mu = prod_j (1 + h o G^j)^(r/k^(j+1))

    eps does not enter the product; it is accepted so every solver entry point has the same signature.
    Factors stop as soon as h o G^j vanishes at this order.
    """
    sig, f = g.sig, g.field
    order = default_order(sig) if order is None else order
    G1, G2 = birat_generic_form(g, order)
    inv_a0 = 1 / g.a0
    coeffs = {(1, sig.l - 1): inv_a0}
    for i in range(1, sig.l):
        coeffs[(0, i)] = g.coeff(i) * inv_a0
    if g.aK_effective != 0:
        coeffs[(0, sig.l + sig.K)] = g.aK_effective * inv_a0
    h = TruncSeries2(f, order, coeffs)

    product = TruncSeries2.constant(f, order, 1)
    z1, z2 = TruncSeries2.variables(f, order)
    gj1, gj2 = z1, z2
    j = 0
    while j <= order + 1:
        term = h if j == 0 else h.compose_pair(gj1, gj2)
        if term.is_zero():
            break
        product = product * (term + 1).pow_rational(Fraction(sig.r, sig.kS ** (j + 1)))
        gj1, gj2 = G1.compose_pair(gj1, gj2), G2.compose_pair(gj1, gj2)
        j += 1
    return product


@dataclass
class PhiData:
    r"""
    the conjugacy phi = (sum A_ij z1^i z2^j, C z2 (1 + mu))
    """
    C: object
    A: Dict[Monomial, object]
    mu: TruncSeries2
    eps: object = 1

    def phi1(self, order: int) -> TruncSeries2:
        return TruncSeries2(self.mu.field, order, dict(self.A))

    def phi2(self, order: int) -> TruncSeries2:
        one_mu = (self.mu + 1).truncate(order)
        return _shift(one_mu, 0, 1).scale(self.C)


@dataclass
class CoreSystem:
    r"""
    square system in the unknowns b_{p+q+1..sigma}, c (vector-field case) and A_ij, (i, j) in E_inf
    """
    unknowns: List[tuple]
    equations: List[Monomial]
    matrix: list
    rhs: list
    det: object = None

    @property
    def square(self) -> bool:
        return len(self.unknowns) == len(self.equations)


@dataclass
class ConjugacyCertificate:
    source: BiratGerm
    target: FavreGerm
    phi: PhiData
    order: int
    residual: Tuple[TruncSeries2, TruncSeries2]
    extended_support: List[Monomial] = dc_field(default_factory=list)
    stage: str = "core"
    core_det: object = None

    def residual_max(self) -> float:
        return max(self.residual[0].max_abs(), self.residual[1].max_abs())

    def residual_is_zero(self, tol: float = RESIDUAL_TOL) -> bool:
        if self.source.field.is_exact:
            return self.residual[0].is_zero() and self.residual[1].is_zero()
        return self.residual_max() < tol


def residual_pair(g: BiratGerm, target: FavreGerm, phi: PhiData, order: int) -> Tuple[TruncSeries2, TruncSeries2]:
    r"""
    F o phi - phi o G, both components, truncated at order
    """
    G1, G2 = birat_generic_form(g, order)
    phi1 = phi.phi1(order)
    phi2 = phi.phi2(order)
    p2 = power_cache(phi2)
    left = phi1 * p2[target.sigma] * target.lam
    for m, value in target.b.items():
        left = left + p2[m].scale(value)
    if target.c_exponent is not None and target.c != 0:
        left = left + p2[target.c_exponent].scale(target.c)
    first = left - phi1.compose_pair(G1, G2)
    second = p2[target.k] - phi2.compose_pair(G1, G2)
    return first, second


class ConjugacySolver(object):
    r"""Solver of F o phi = phi o G for one birational germ"""

    def __init__(self, g: BiratGerm, eps=1, order: Optional[int] = None, tol: float = RESIDUAL_TOL):
        r"""
        Parameters:
            g: the birational germ
            eps: (k-1)-th root of unity fixing the branch of C; exact mode pins eps = 1
            order: truncation order, default 3 sigma + r + s
            tol: zero threshold of complex mode
        """
        self.g = g.normalized()
        self.sig = self.g.sig
        self.field = self.g.field
        self.tol = tol
        f, sig = self.field, self.sig
        self.eps = f(eps)
        if f.is_exact and self.eps != 1:
            raise InvalidInput("exact mode pins eps = 1")
        if not f.is_zero(self.eps ** (sig.kS - 1) - 1, ROOT_TOL):
            raise InvalidInput("eps must be a (k-1)-th root of unity")
        self.order = default_order(sig) if order is None else order

        self.C = conjugation_constant(self.g, self.eps)
        self.A10 = self.C ** sig.pq / self.g.a0 ** sig.p
        self.lam = sig.delta * self.g.a0 ** (sig.p - 1) / (sig.kS * self.C ** sig.sigma)
        self.vector_field = sig.twisted and f.is_zero(self.lam - 1, tol)
        self.E = e_infty(sig)
        self.core_points = [pt for pt in sorted(self.E.points, key=lambda x: (x[1], x[0]))
                            if pt not in ((0, 0), (1, 0))]
        needed = self._core_rows()
        top = max((i + j for (i, j) in needed), default=0)
        if self.order < top:
            raise InvalidInput(f"order {self.order} is below the core bidegree {top}")
        self._columns = None

    def _core_rows(self) -> List[Monomial]:
        sig = self.sig
        rows = [(0, m) for m in range(sig.pq + 1, sig.sigma + 1)]
        rows += [(i, j + sig.sigma) for (i, j) in self.core_points]
        if self.vector_field:
            rows.append((0, sig.c_exponent))
        return rows

    def _core_unknowns(self) -> List[tuple]:
        sig = self.sig
        names = [("b", m) for m in range(sig.pq + 1, sig.sigma + 1)]
        if self.vector_field:
            names.append(("c", sig.c_exponent))
        names += [("A", pt) for pt in self.core_points]
        return names

    def _build(self):
        r"""
        series of every unknown column and of the known part
        """
        if self._columns is not None:
            return
        f, sig, N = self.field, self.sig, self.order
        G1, G2 = birat_generic_form(self.g, N)
        self.one_mu = mu_series(self.g, self.eps, N)
        phi2 = _shift(self.one_mu, 0, 1).scale(self.C)
        p2 = power_cache(phi2)
        lam_sigma = p2[sig.sigma].scale(self.lam)
        pow1, pow2 = power_cache(G1), power_cache(G2)

        columns: Dict[tuple, TruncSeries2] = {}
        for m in range(sig.pq + 1, sig.sigma + 1):
            columns[("b", m)] = p2[m]
        if self.vector_field:
            columns[("c", sig.c_exponent)] = p2[sig.c_exponent]
        window = []
        for total in range(1, N + 1):
            for i in range(total + 1):
                j = total - i
                if (i, j) == (1, 0):
                    continue
                if i + j + sig.sigma > N and i * sig.pq + j * sig.kS > N:
                    continue
                window.append((i, j))
        for pt in window:
            i, j = pt
            columns[("A", pt)] = _shift(lam_sigma, i, j) - pow1[i] * pow2[j]
        self.known = (_shift(lam_sigma, 1, 0) - G1).scale(self.A10) + p2[sig.pq]
        self._columns = columns
        self.tail = [("A", pt) for pt in window if pt not in self.core_points]
        log_info(f"conjugation system: {len(columns)} unknowns, order {N}")

    def core_system(self) -> CoreSystem:
        r"""
        assemble the square core system with the tail set to zero
        """
        self._build()
        unknowns = self._core_unknowns()
        rows = self._core_rows()
        if len(unknowns) != len(rows):
            log_warning(f"core system is {len(rows)} x {len(unknowns)}, not square")
        matrix = [[self._columns[u].coeff(*row) for u in unknowns] for row in rows]
        rhs = [-self.known.coeff(*row) for row in rows]
        return CoreSystem(unknowns=unknowns, equations=rows, matrix=matrix, rhs=rhs)

    def _all_rows(self) -> List[Monomial]:
        N = self.order
        return [(i, total - i) for total in range(N + 1) for i in range(total + 1)]

    def _touches_core(self, name) -> bool:
        col = self._columns[name]
        return any(col.coeff(*row) != 0 for row in self._core_rows())

    def solve(self) -> ConjugacyCertificate:
        f, sig, N = self.field, self.sig, self.order
        core = self.core_system()
        values: Dict[tuple, object] = {}
        stage = "core"
        if core.square:
            solution, det = solve_square(core.matrix, core.rhs, f)
            core.det = det
            values.update(zip(core.unknowns, solution))
            rows = self._all_rows()
            fixed = self.known
            for name, value in values.items():
                fixed = fixed + self._columns[name].scale(value)
            tail_matrix = [[self._columns[t].coeff(*row) for t in self.tail] for row in rows]
            red = row_reduce(tail_matrix, [-fixed.coeff(*row) for row in rows], f)
            if red.consistent:
                values.update(zip(self.tail, red.solution))
            else:
                log_warning("tail sweep is inconsistent with the core, solving jointly")
                stage = "joint"
        else:
            stage = "joint"

        if stage == "joint":
            values = self._joint_solve(core)

        b = {sig.pq: f.one}
        c = f.zero
        A = {(1, 0): self.A10}
        for name, value in values.items():
            if f.is_zero(value, self.tol):
                continue
            if name[0] == "b":
                b[name[1]] = value
            elif name[0] == "c":
                c = value
            else:
                A[name[1]] = value
        extended = sorted(t[1] for t in self.tail
                          if not f.is_zero(values.get(t, f.zero), self.tol) and self._touches_core(t))
        if extended:
            log_warning(f"phi1 support extends beyond E_inf at {extended}")

        target = FavreGerm(f, self.lam, sig.sigma, sig.kS, b, c)
        phi = PhiData(C=self.C, A=A, mu=self.one_mu - 1, eps=self.eps)
        residual = residual_pair(self.g, target, phi, N)
        return ConjugacyCertificate(source=self.g, target=target, phi=phi, order=N,
                                    residual=residual, extended_support=extended,
                                    stage=stage, core_det=core.det)

    def _joint_solve(self, core: CoreSystem) -> Dict[tuple, object]:
        f, N = self.field, self.order
        names = core.unknowns + self.tail
        rows = self._all_rows()
        matrix = [[self._columns[u].coeff(*row) for u in names] for row in rows]
        red = row_reduce(matrix, [-self.known.coeff(*row) for row in rows], f)
        if not red.consistent:
            raise SingularSystem(f"conjugation equations are inconsistent at order {N}")
        return dict(zip(names, red.solution))


def normalize(g: BiratGerm, eps=1, order: Optional[int] = None, tol: float = RESIDUAL_TOL) -> ConjugacyCertificate:
    r"""
    conjugate G to its Favre normal form and return the certificate
    """
    return ConjugacySolver(g, eps=eps, order=order, tol=tol).solve()


def core_system(g: BiratGerm, eps=1, order: Optional[int] = None) -> CoreSystem:
    r"""
    the core system with its determinant; SingularSystem if the determinant vanishes
    """
    solver = ConjugacySolver(g, eps=eps, order=order)
    core = solver.core_system()
    if core.square:
        _, core.det = solve_square(core.matrix, core.rhs, solver.field)
    return core
