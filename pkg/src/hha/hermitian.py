"""Hyperhermitian metrics and their derived tensors.

A metric is the q-real, q-positive (2,0)-form ``Omega``.  From it the module
derives the Hermitian frame matrix, Pfaffian, inner products on forms, the
Hodge star, the Lefschetz operator and its adjoint, the canonical 1-forms
``alpha`` (from the top antiholomorphic power) and ``beta`` (from the
(n-1)-st power), Lee form, Ricci forms and both scalar curvatures.

``alpha`` and ``beta`` are always computed along two independent routes
(coefficient division against the relevant power, and the Lefschetz-adjoint
formula); any disagreement raises, acting as a built-in convention audit.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from . import linalg
from .forms import Form, SkewMatrix, bidegree_project, bidegree_split, pure_bidegree
from .hypercomplex import Geometry, SpherePoint
from .scalars import (
    C_I,
    C_ONE,
    C_ZERO,
    ComplexScalar,
    Scalar,
    ZERO,
    rational,
)


class MetricError(ValueError):
    pass


class QRealError(MetricError):
    pass


class ConsistencyError(RuntimeError):
    """Two paper-equivalent computations disagreed; indicates a convention bug."""


def _factorial(k: int) -> int:
    return math.factorial(k)


# -- the (1,1) <-> (2,0) correspondence --------------------------------------


def _i_vector(geom: Geometry, vec: dict) -> dict:
    N = geom.N
    return {
        k: (c.times_i() if k < N else -c.times_i())
        for k, c in vec.items()
    }


def _k_vector(geom: Geometry, vec: dict) -> dict:
    return _i_vector(geom, geom.frame.j_vector(vec))


def two_form_from_pairs(geom: Geometry, fn) -> Form:
    """Assemble a 2-form from a bilinear evaluation callback on frame vectors."""
    N = geom.N
    dim = geom.algebra.dim
    fr = geom.frame
    terms = {}
    for r in range(2 * N):
        for s in range(r + 1, 2 * N):
            c = fn(fr.frame_vector(r + 1) if r < N else fr.frame_vector(r - N + 1, bar=True),
                   fr.frame_vector(s + 1) if s < N else fr.frame_vector(s - N + 1, bar=True))
            if not c.is_zero():
                terms[(r, s)] = c
    return Form(dim, 2, terms)


def phi(geom: Geometry, gamma: Form) -> Form:
    """The pointwise bijection (1,1)-forms -> (2,0)-forms.

    ``phi(gamma)(X, Y) = (i gamma(JX, Y) - gamma(KX, Y)) / 2``.
    """
    if pure_bidegree(gamma, geom.N) != (1, 1) and not gamma.is_zero():
        raise MetricError("phi expects a (1,1)-form")
    fr = geom.frame
    N = geom.N
    terms = {}
    for r in range(N):
        for s in range(r + 1, N):
            zr, zs = fr.frame_vector(r + 1), fr.frame_vector(s + 1)
            val = gamma.evaluate([fr.j_vector(zr), zs]).times_i() \
                - gamma.evaluate([_k_vector(geom, zr), zs])
            val = val * ComplexScalar(rational(1, 2))
            if not val.is_zero():
                terms[(r, s)] = val
    return Form(gamma.nsym, 2, terms)


def phi_inverse(geom: Geometry, sigma: Form) -> Form:
    """Inverse of :func:`phi`, extended complex-linearly via q-real parts."""
    if pure_bidegree(sigma, geom.N) != (2, 0) and not sigma.is_zero():
        raise MetricError("phi_inverse expects a (2,0)-form")
    fr = geom.frame
    jbar = fr.j_action(fr.conjugate(sigma))
    half = ComplexScalar(rational(1, 2))
    s1 = (sigma + jbar) * half
    s2 = (sigma - jbar) * (-C_I * half)

    def real_part_inverse(s: Form) -> Form:
        total = s + fr.conjugate(s)
        N = geom.N
        terms = {}
        for r in range(N):
            zr = fr.frame_vector(r + 1)
            jizr = fr.j_vector(_i_vector(geom, zr))
            for s_ in range(N):
                zsb = fr.frame_vector(s_ + 1, bar=True)
                val = -total.evaluate([jizr, zsb])
                if not val.is_zero():
                    terms[(r, N + s_)] = val
        # sanity: the reconstruction has no (2,0) or (0,2) piece
        for r in range(N):
            for s_ in range(r + 1, N):
                chk = -total.evaluate([fr.j_vector(_i_vector(geom, fr.frame_vector(r + 1))),
                                       fr.frame_vector(s_ + 1)])
                if not chk.is_zero():
                    raise ConsistencyError("phi_inverse produced a (2,0) component")
        return Form(sigma.nsym, 2, terms)

    g1 = real_part_inverse(s1)
    g2 = real_part_inverse(s2)
    out = g1 + g2 * C_I
    back = phi(geom, out) if not out.is_zero() else Form.zero(sigma.nsym, 2)
    if back != sigma:
        raise ConsistencyError("phi(phi_inverse(sigma)) != sigma")
    return out


def hermitian_matrix_of(geom: Geometry, sigma: Form):
    """Hermitian matrix M[r][s] = sigma(Z_r, J conj(Z_s)) of a q-real (2,0)-form."""
    fr = geom.frame
    N = geom.N
    out = []
    for r in range(N):
        zr = fr.frame_vector(r + 1)
        row = []
        for s in range(N):
            w = fr.j_vector(fr.frame_vector(s + 1, bar=True))
            row.append(sigma.evaluate([zr, w]))
        out.append(row)
    return out


def qpositivity_verdict(geom: Geometry, form: Form) -> str:
    """Definiteness verdict of a q-real form of bidegree (0,0) or (2,0)."""
    if not geom.frame.is_q_real(form):
        raise QRealError("form is not q-real")
    if form.degree == 0:
        c = form.coefficient(())
        s = c.re.sign()
        return {1: "positive", 0: "zero", -1: "negative"}[s]
    if pure_bidegree(form, geom.N) != (2, 0):
        raise MetricError("q-positivity verdict expects a (2,0)-form")
    return linalg.hermitian_definiteness(hermitian_matrix_of(geom, form))


def _power_pairing_matrix(geom: Geometry, a: Form):
    """Skew matrix B[r][s] = top coefficient of a ^ z^r ^ z^s."""
    N = geom.N
    dim = geom.algebra.dim
    top = tuple(range(N))
    B = [[C_ZERO] * N for _ in range(N)]
    for r in range(N):
        for s in range(r + 1, N):
            mono = Form.monomial(dim, (r, s))
            c = a.wedge(mono).coefficient(top)
            B[r][s] = c
            B[s][r] = -c
    return B


def is_power_of_qpositive(geom: Geometry, a: Form) -> bool:
    """Decide whether a q-real (2n-2,0)-form is the (n-1)-st power of a
    q-positive (2,0)-form, divided by (n-1)!."""
    n = geom.n
    N = geom.N
    dim = geom.algebra.dim
    if not geom.frame.is_q_real(a):
        raise QRealError("form is not q-real")
    if n == 1:
        return qpositivity_verdict(geom, a) == "positive"
    if pure_bidegree(a, N) != (2 * n - 2, 0):
        raise MetricError("power decision expects a (2n-2,0)-form")
    B = _power_pairing_matrix(geom, a)
    if linalg.det(B).is_zero():
        return False
    # Pfaffian-adjugate style inversion: apply the same pairing to the form
    # built from B; the result is proportional to any (n-1)-st root of a.
    fb = Form(dim, 2, {
        (r, s): B[r][s] for r in range(N) for s in range(r + 1, N)
        if not B[r][s].is_zero()
    })
    power_b = fb.wedge_power(n - 1)
    D = _power_pairing_matrix(geom, power_b.scale(rational(1, _factorial(n - 1))))
    cand = Form(dim, 2, {
        (r, s): D[r][s] for r in range(N) for s in range(r + 1, N)
        if not D[r][s].is_zero()
    })
    if cand.is_zero():
        return False
    power_c = cand.wedge_power(n - 1).scale(rational(1, _factorial(n - 1)))
    lam = _exact_ratio(power_c, a)
    if lam is None or not lam.is_real() or lam.re.is_zero():
        return False
    # the root scale c satisfies c^{n-1} = 1/lam; a positive lam admits a
    # positive c, a negative lam only an odd-power negative c
    try:
        if lam.re.sign() > 0:
            return qpositivity_verdict(geom, cand) == "positive"
        if (n - 1) % 2 == 1:
            return qpositivity_verdict(geom, -cand) == "positive"
        return False
    except QRealError:
        return False


def _exact_ratio(f: Form, g: Form):
    """lambda with f = lambda * g exactly, or None."""
    if g.is_zero():
        return None
    key, c = next(iter(g.terms.items()))
    lam = f.coefficient(key) / c
    return lam if f == g.scale(lam) else None


def is_qpositive(geom: Geometry, form: Form) -> bool:
    """q-positivity of a (2,0)-form, or the power decision in degree 2n-2."""
    if form.degree in (0, 2):
        return qpositivity_verdict(geom, form) == "positive"
    if form.degree == 2 * geom.n - 2:
        return is_power_of_qpositive(geom, form)
    raise MetricError("q-positivity is decided in degrees 2 and 2n-2 only")


@dataclass
class CanonicalForms:
    alpha: Form
    beta: Form
    eta: Form
    theta: Form


@dataclass
class CurvatureData:
    ric_ch: Form
    ric_bis: Form
    ric_ob: Form
    s_ch: Scalar
    s_bis: Scalar
    s_ob: Scalar
    del_j_alpha: Form
    del_j_beta: Form


class Metric:
    """The q-real q-positive (2,0)-form of an invariant hyperhermitian metric."""

    def __init__(self, geometry: Geometry, omega: Form):
        self.geometry = geometry
        self.n = geometry.n
        self.N = geometry.N
        fr = geometry.frame
        if not omega.is_zero() and pure_bidegree(omega, self.N) != (2, 0):
            raise MetricError("metric form must have bidegree (2,0)")
        if not fr.is_q_real(omega):
            raise QRealError("metric form must be q-real")
        self.omega = omega
        self.gram = hermitian_matrix_of(geometry, omega)
        if linalg.hermitian_definiteness(self.gram) != "positive":
            raise MetricError("metric form is not q-positive")
        self.skew = SkewMatrix.from_form(omega, self.N)
        self.pf = self.skew.pfaffian()
        if not self.pf.is_real():
            raise ConsistencyError("Pfaffian of a q-real metric must be real")
        det_g = linalg.det(self.gram)
        if self.pf * self.pf.conjugate() != det_g:
            raise ConsistencyError("|pf|^2 != det of the Hermitian matrix")
        self.det_g = det_g.re
        self._g_inv = linalg.inverse(self.gram)
        # Hermitian product of holomorphic covectors: <z^r, z^s> = (G^-1)_{sr}
        self._h = [[self._g_inv[s][r] for s in range(self.N)] for r in range(self.N)]
        self._h_diagonal = all(
            self._h[r][s].is_zero()
            for r in range(self.N) for s in range(self.N) if r != s
        )
        self._omega_n = omega.wedge_power(self.n)
        self._omega_plus_bar: Form | None = None
        self._canonical: CanonicalForms | None = None
        self._curvature: CurvatureData | None = None

    # -- constructors ----------------------------------------------------------

    @classmethod
    def unitary(cls, geometry: Geometry) -> "Metric":
        terms = {(2 * i, 2 * i + 1): C_ONE for i in range(geometry.n)}
        return cls(geometry, Form(geometry.algebra.dim, 2, terms))

    @classmethod
    def diagonal(cls, geometry: Geometry, coeffs) -> "Metric":
        terms = {}
        for i, c in enumerate(coeffs):
            terms[(2 * i, 2 * i + 1)] = ComplexScalar(Scalar._coerce(c))
        return cls(geometry, Form(geometry.algebra.dim, 2, terms))

    @classmethod
    def from_skew_entries(cls, geometry: Geometry, entries: dict) -> "Metric":
        """Entries {(i, j): complex} over 1-based holomorphic indices i < j."""
        terms = {}
        for (i, j), c in entries.items():
            terms[(i - 1, j - 1)] = ComplexScalar._coerce(c)
        return cls(geometry, Form(geometry.algebra.dim, 2, terms))

    @classmethod
    def from_hermitian_matrix(cls, geometry: Geometry, gram) -> "Metric":
        """Rebuild the (2,0)-form from g_{r sbar}; inverse of ``.gram``.

        Uses G[r][s] = Omega(Z_r, J conj(Z_s)) with J conj(Z_{2i-1}) = Z_{2i},
        so the full skew matrix is A[r][t] = G[r][t-1] (t odd, 0-based) and
        A[r][t] = -G[r][t+1] (t even).  Skew-symmetry of the result is exactly
        the hyperhermitian compatibility of the input and is verified.
        """
        N = geometry.N
        g = [[ComplexScalar._coerce(x) for x in row] for row in gram]
        full = [[(g[r][t - 1] if t % 2 else -g[r][t + 1]) for t in range(N)]
                for r in range(N)]
        for r in range(N):
            if not full[r][r].is_zero():
                raise MetricError("matrix is not hyperhermitian-compatible")
            for t in range(r + 1, N):
                if full[r][t] != -full[t][r]:
                    raise MetricError("matrix is not hyperhermitian-compatible")
        terms = {
            (r, t): full[r][t]
            for r in range(N) for t in range(r + 1, N)
            if not full[r][t].is_zero()
        }
        m = cls(geometry, Form(geometry.algebra.dim, 2, terms))
        if m.gram != g:
            raise MetricError("matrix is not the Gram matrix of a hyperhermitian metric")
        return m

    def scaled(self, c) -> "Metric":
        c = Scalar._coerce(c)
        if c.sign() <= 0:
            raise MetricError("conformal factor must be positive")
        return Metric(self.geometry, self.omega.scale(c))

    # -- basic derived data -------------------------------------------------------

    def omega_bar(self) -> Form:
        return self.geometry.frame.conjugate(self.omega)

    def omega_power(self, k: int) -> Form:
        if k == self.n:
            return self._omega_n
        return self.omega.wedge_power(k)

    def volume_coefficient(self) -> Scalar:
        """Coefficient of the volume against the frame top form: |pf|^2."""
        return self.det_g

    def volume_form(self) -> Form:
        dim = self.geometry.algebra.dim
        return Form.monomial(dim, tuple(range(dim)), ComplexScalar(self.det_g))

    def omega_i(self) -> Form:
        """The real (1,1)-form of the metric for the frame's first structure."""
        N = self.N
        terms = {}
        for r in range(N):
            for s in range(N):
                g = self.gram[r][s]
                if not g.is_zero():
                    terms[(r, N + s)] = g.times_i()
        return Form(self.geometry.algebra.dim, 2, terms)

    def gram_real(self):
        """Riemannian Gram matrix on the adapted real basis u_a."""
        fr = self.geometry.frame
        dim = self.geometry.algebra.dim
        opob = self.omega + self.omega_bar()

        def g_eval(v, w):
            return -(opob.evaluate([fr.j_vector(v), w]))

        coords = [self._real_basis_frame_coords(a) for a in range(dim)]
        return [[g_eval(coords[a], coords[b]) for b in range(dim)] for a in range(dim)]

    def _real_basis_frame_coords(self, a: int) -> dict:
        """Frame coordinates of the adapted real basis vector u_a."""
        r = a // 2
        if a % 2 == 0:
            return {r: C_ONE, self.N + r: C_ONE}
        return {r: C_I, self.N + r: -C_I}

    def metric_on_vectors(self, v: dict, w: dict) -> ComplexScalar:
        """Bilinear extension of g on frame-coordinate vectors."""
        fr = self.geometry.frame
        if self._omega_plus_bar is None:
            self._omega_plus_bar = self.omega + self.omega_bar()
        return -(self._omega_plus_bar.evaluate([fr.j_vector(v), w]))

    # -- inner products and the star ------------------------------------------------

    def _h_entry(self, i: int, j: int) -> ComplexScalar:
        N = self.N
        if i < N and j < N:
            return self._h[i][j]
        if i >= N and j >= N:
            return self._h[i - N][j - N].conjugate()
        return C_ZERO

    def inner_product(self, a: Form, b: Form) -> ComplexScalar:
        """Hermitian inner product; determinant extension of the frame product."""
        if a.degree != b.degree:
            raise MetricError("inner product needs forms of equal degree")
        total = C_ZERO
        if self._h_diagonal:
            for key, ca in a.terms.items():
                cb = b.terms.get(key)
                if cb is None:
                    continue
                w = C_ONE
                for i in key:
                    w = w * self._h_entry(i, i)
                total = total + ca * cb.conjugate() * w
            return total
        for ka, ca in a.terms.items():
            for kb, cb in b.terms.items():
                minor = [[self._h_entry(i, j) for j in kb] for i in ka]
                dt = linalg.det(minor) if ka else C_ONE
                if not dt.is_zero():
                    total = total + ca * cb.conjugate() * dt
        return total

    def norm2(self, a: Form) -> Scalar:
        v = self.inner_product(a, a)
        if not v.is_real():
            raise ConsistencyError("squared norm has an imaginary part")
        return v.re

    def hodge_star(self, a: Form) -> Form:
        """Hodge star defined by psi ^ star(a) = <psi, a> vol; conjugate-linear."""
        dim = self.geometry.algebra.dim
        N = self.N
        out = Form.zero(dim, dim - a.degree)
        vol = ComplexScalar(self.det_g)
        parts = bidegree_split(a, N)
        for (p, q), part in parts.items():
            target_terms: dict = {}
            for hol in itertools.combinations(range(N), p):
                for anti in itertools.combinations(range(N, 2 * N), q):
                    key = hol + anti
                    psi = Form.monomial(dim, key)
                    pairing = self.inner_product(psi, part)
                    if pairing.is_zero():
                        continue
                    comp_h = tuple(i for i in range(N) if i not in hol)
                    comp_a = tuple(i for i in range(N, 2 * N) if i not in anti)
                    comp = comp_h + comp_a
                    sign = _complement_sign(key, comp, dim)
                    c = pairing * vol
                    if sign < 0:
                        c = -c
                    acc = target_terms.get(comp, C_ZERO) + c
                    if acc.is_zero():
                        target_terms.pop(comp, None)
                    else:
                        target_terms[comp] = acc
            out = out + Form(dim, dim - a.degree, target_terms)
        return out

    def lefschetz(self, a: Form) -> Form:
        return self.omega.wedge(a)

    def lefschetz_adjoint(self, a: Form, conjugate: bool = False) -> Form:
        """Adjoint of wedging with Omega (or conj(Omega) when ``conjugate``)."""
        N = self.N
        dim = self.geometry.algebra.dim
        L = self.omega_bar() if conjugate else self.omega
        pq = pure_bidegree(a, N)
        if pq is None:
            out = Form.zero(dim, max(a.degree - 2, 0))
            for part in bidegree_split(a, N).values():
                out = out + self.lefschetz_adjoint(part, conjugate)
            return out
        p, q = pq
        tp, tq = (p, q - 2) if conjugate else (p - 2, q)
        if tp < 0 or tq < 0:
            return Form.zero(dim, max(a.degree - 2, 0))
        basis = []
        for hol in itertools.combinations(range(N), tp):
            for anti in itertools.combinations(range(N, 2 * N), tq):
                basis.append(Form.monomial(dim, hol + anti))
        if not basis:
            return Form.zero(dim, a.degree - 2)
        # <Lambda a, b_n> = <a, L b_n> with Lambda a = sum_m c_m b_m
        mat = [[self.inner_product(bm, bn) for bm in basis] for bn in basis]
        rhs = [self.inner_product(a, L.wedge(bn)) for bn in basis]
        sol = linalg.solve(mat, rhs)
        if sol is None:
            raise ConsistencyError("Lefschetz adjoint solve failed")
        out = Form.zero(dim, a.degree - 2)
        for c, bm in zip(sol, basis):
            out = out + bm.scale(c)
        return out

    def lefschetz_power_bijective(self, p: int) -> bool:
        """Check L^{n-p}: (p,0)-forms -> (2n-p,0)-forms is invertible."""
        N, dim, n = self.N, self.geometry.algebra.dim, self.n
        power = self.omega_power(n - p)
        source = list(itertools.combinations(range(N), p))
        target = list(itertools.combinations(range(N), 2 * n - p))
        index = {key: i for i, key in enumerate(target)}
        mat = [[C_ZERO] * len(source) for _ in range(len(target))]
        for j, key in enumerate(source):
            img = power.wedge(Form.monomial(dim, key))
            for k, c in img.terms.items():
                mat[index[k]][j] = c
        return len(source) == len(target) and not linalg.det(mat).is_zero()

    # -- traces --------------------------------------------------------------------

    def _trace_ratio(self, xi: Form) -> ComplexScalar:
        """n * (xi ^ Omega^{n-1}) / Omega^n as a coefficient ratio."""
        top = tuple(range(self.N))
        num = xi.wedge(self.omega_power(self.n - 1)).coefficient(top)
        den = self._omega_n.coefficient(top)
        return num * den.inverse() * ComplexScalar(rational(self.n))

    def trace_omega(self, xi: Form) -> Scalar:
        """Trace of a q-real (2,0)-form against Omega; exact real scalar."""
        if not self.geometry.frame.is_q_real(xi):
            raise QRealError("trace requires a q-real form")
        v = self._trace_ratio(xi)
        if not v.is_real():
            raise ConsistencyError("trace of a q-real form must be real")
        return v.re

    def _trace_ratio_bar(self, xi: Form) -> ComplexScalar:
        top = tuple(range(self.N, 2 * self.N))
        ob = self.omega_bar()
        num = xi.wedge(ob.wedge_power(self.n - 1)).coefficient(top)
        den = ob.wedge_power(self.n).coefficient(top)
        return num * den.inverse() * ComplexScalar(rational(self.n))

    def trace_omega_i(self, gamma: Form) -> ComplexScalar:
        """Metric trace of a (1,1)-form: -i sum (G^-1)_{sr} gamma(Z_r, conj Z_s)."""
        N = self.N
        total = C_ZERO
        for key, c in gamma.terms.items():
            i, j = key
            if i < N <= j:
                r, s = i, j - N
                total = total + self._g_inv[s][r] * c
        return -(total.times_i())

    # -- canonical forms and curvature ------------------------------------------------

    def canonical_forms(self) -> CanonicalForms:
        if self._canonical is not None:
            return self._canonical
        fr = self.geometry.frame
        n, N, dim = self.n, self.N, self.geometry.algebra.dim
        omega_bar_n = fr.conjugate(self._omega_n)
        d_obn = fr.del_(omega_bar_n)
        pf_bar_fact = self.pf.conjugate() * ComplexScalar(rational(_factorial(n)))
        alpha_terms = {}
        for key, c in d_obn.terms.items():
            r = key[0]
            if r >= N:
                raise ConsistencyError("unexpected key in the top-power derivative")
            alpha_terms[(r,)] = c * pf_bar_fact.inverse()
        alpha_div = Form(dim, 1, alpha_terms)
        alpha_lef = self.lefschetz_adjoint(fr.del_(self.omega_bar()), conjugate=True)
        if alpha_div != alpha_lef:
            raise ConsistencyError("alpha mismatch between division and adjoint routes")
        beta_div = self._solve_beta()
        beta_lef = self.lefschetz_adjoint(fr.del_(self.omega))
        if beta_div != beta_lef:
            raise ConsistencyError("beta mismatch between division and adjoint routes")
        alpha, beta = alpha_div, beta_div
        if not fr.del_(alpha).is_zero():
            raise ConsistencyError("alpha is not del-closed")
        if not fr.is_q_real(fr.del_j(alpha)):
            raise ConsistencyError("del_J alpha is not q-real")
        eta = alpha + fr.conjugate(alpha)
        theta = eta + beta + fr.conjugate(beta)
        self._canonical = CanonicalForms(alpha=alpha, beta=beta, eta=eta, theta=theta)
        return self._canonical

    def _solve_beta(self) -> Form:
        fr = self.geometry.frame
        n, N, dim = self.n, self.N, self.geometry.algebra.dim
        power = self.omega_power(n - 1)
        target = fr.del_(power)
        rows_keys = list(itertools.combinations(range(N), 2 * n - 1))
        index = {k: i for i, k in enumerate(rows_keys)}
        mat = [[C_ZERO] * N for _ in rows_keys]
        for r in range(N):
            img = Form.monomial(dim, (r,)).wedge(power)
            for k, c in img.terms.items():
                mat[index[k]][r] = c
        rhs = [C_ZERO] * len(rows_keys)
        for k, c in target.terms.items():
            rhs[index[k]] = c
        sol = linalg.solve(mat, rhs)
        if sol is None:
            raise ConsistencyError("beta solve failed; hard Lefschetz violated")
        terms = {(r,): c for r, c in enumerate(sol) if not c.is_zero()}
        return Form(dim, 1, terms)

    def curvature(self) -> CurvatureData:
        if self._curvature is not None:
            return self._curvature
        fr = self.geometry.frame
        cf = self.canonical_forms()
        dja = fr.del_j(cf.alpha)
        djb = fr.del_j(cf.beta)
        s_ch_c = self._trace_ratio(dja) * ComplexScalar(rational(2))
        if not s_ch_c.is_real():
            raise ConsistencyError("Chern scalar curvature has an imaginary part")
        s_bis_c = self._trace_ratio(djb) * ComplexScalar(rational(-2))
        if not s_bis_c.is_real():
            raise ConsistencyError("Bismut scalar curvature has an imaginary part")
        ric_ch = fr.d(fr.i_action(cf.eta))
        beta_real = cf.beta + fr.conjugate(cf.beta)
        ric_bis = -(fr.d(fr.i_action(beta_real)))
        ric_ob = fr.d(cf.eta)
        # cross-check the trace identity for the Chern scalar curvature
        ric_ch_11 = bidegree_project(ric_ch, self.N, 1, 1)
        tr = self.trace_omega_i(ric_ch_11)
        if tr != s_ch_c:
            raise ConsistencyError("s^Ch disagrees with the trace of the Chern-Ricci form")
        self._curvature = CurvatureData(
            ric_ch=ric_ch,
            ric_bis=ric_bis,
            ric_ob=ric_ob,
            s_ch=s_ch_c.re,
            s_bis=s_bis_c.re,
            s_ob=ZERO,
            del_j_alpha=dja,
            del_j_beta=djb,
        )
        return self._curvature

    # -- structures in the sphere --------------------------------------------------

    def omega_for_L(self, p: SpherePoint) -> Form:
        """The (1,1)-form of g for the structure L = a I + b J + c K, as a 2-form
        in the frame of the base pair."""
        L = self.geometry.structure.combo(p)
        cols = self._structure_columns(L)

        def fn(v, w):
            (k, _c), = v.items()
            return self.metric_on_vectors(cols[k], w)

        return two_form_from_pairs(self.geometry, fn)

    def _structure_columns(self, mat):
        """Frame-coordinate columns of a real endomorphism (one conversion per
        basis vector instead of one per evaluation pair)."""
        cols = []
        for k in range(2 * self.N):
            cols.append(self._matrix_on_frame_vector(mat, {k: C_ONE}))
        return cols

    def _matrix_on_frame_vector(self, mat, v: dict) -> dict:
        dim = self.geometry.algebra.dim
        real = self._frame_vec_to_real(v)
        img = [C_ZERO] * dim
        for j in range(dim):
            cj = real[j]
            if cj.is_zero():
                continue
            for i in range(dim):
                m = mat[i][j]
                if not m.is_zero():
                    img[i] = img[i] + ComplexScalar(m) * cj
        return self._real_vec_to_frame(img)

    def _frame_vec_to_real(self, v: dict):
        fr = self.geometry.frame
        dim = self.geometry.algebra.dim
        out = [C_ZERO] * dim
        half = ComplexScalar(rational(1, 2))
        for k, c in v.items():
            r = k if k < self.N else k - self.N
            sign_i = -C_I if k < self.N else C_I
            # Z_r = (u_{2r} - i u_{2r+1})/2 over the adapted basis
            u_even = fr.basis[2 * r]
            u_odd = fr.basis[2 * r + 1]
            for i in range(dim):
                ue, uo = u_even[i], u_odd[i]
                if not ue.is_zero():
                    out[i] = out[i] + c * half * ComplexScalar(ue)
                if not uo.is_zero():
                    out[i] = out[i] + c * half * sign_i * ComplexScalar(uo)
        return out

    def _real_vec_to_frame(self, dense) -> dict:
        fr = self.geometry.frame
        dim = self.geometry.algebra.dim
        out: dict = {}
        # u-coordinates of the dense vector: P^{-1} . dense
        ucoords = [C_ZERO] * dim
        for a in range(dim):
            acc = C_ZERO
            for i in range(dim):
                if not dense[i].is_zero():
                    acc = acc + fr._P_inv[a][i] * dense[i]
            ucoords[a] = acc
        for r in range(self.N):
            ce, co = ucoords[2 * r], ucoords[2 * r + 1]
            hol = ce + co.times_i()
            anti = ce - co.times_i()
            if not hol.is_zero():
                out[r] = hol
            if not anti.is_zero():
                out[self.N + r] = anti
        return out

    def in_rotated_frame(self, rotated: Geometry) -> "Metric":
        """Express the same Riemannian metric in a rotated pair's frame."""
        H = rotated.structure
        fr = self.geometry.frame
        j_cols = self._structure_columns(H.J)
        k_cols = self._structure_columns(H.K)
        half = ComplexScalar(rational(1, 2))

        def omega_rot(v, w):
            # (omega_{J'} + i omega_{K'})/2 on original-frame vectors
            (k, _c), = v.items()
            return (self.metric_on_vectors(j_cols[k], w)
                    + self.metric_on_vectors(k_cols[k], w).times_i()) * half

        form_old_frame = two_form_from_pairs(self.geometry, omega_rot)
        real = fr.to_real(form_old_frame)
        new_form = rotated.frame.to_complex(real)
        return Metric(rotated, new_form)

    # -- identities -------------------------------------------------------------------

    def strong_torsion_scalar_identity(self) -> Scalar:
        """(1/2) s^Ch + g(del del_J conj(Omega), Omega ^ conj(Omega)) - |del conj(Omega)|^2."""
        fr = self.geometry.frame
        cur = self.curvature()
        ob = self.omega_bar()
        ddj = fr.del_(fr.del_j(ob))
        pairing = self.inner_product(ddj, self.omega.wedge(ob))
        if not pairing.is_real():
            raise ConsistencyError("mixed pairing has an imaginary part")
        half_sch = cur.s_ch / 2
        return half_sch + pairing.re - self.norm2(fr.del_(ob))

    def pointwise_torsion_identity(self, z: dict):
        """Both sides of the contraction identity for a (1,0) vector Z."""
        fr = self.geometry.frame
        cf = self.canonical_forms()
        dja = fr.del_j(cf.alpha)
        jzbar = fr.j_vector(fr.conj_vector(z))
        lhs = dja.evaluate([z, jzbar])
        dob = fr.del_(self.omega_bar())
        t1 = self.norm2(dob.contract(z))
        t2 = self.norm2(dob.contract(jzbar))
        ddj = fr.del_(fr.del_j(self.omega_bar()))
        contracted = ddj.contract(z).contract(jzbar)
        obn1 = self.omega_bar().wedge_power(self.n - 1)
        top_bar = tuple(range(self.N, 2 * self.N))
        num = contracted.wedge(obn1).coefficient(top_bar)
        den = self.omega_bar().wedge_power(self.n).coefficient(top_bar)
        ratio = num * den.inverse() * ComplexScalar(rational(self.n))
        rhs = ComplexScalar(t1) + ComplexScalar(t2) - ratio
        return lhs, rhs

    def product_trace_identity(self, psi: Form, zeta: Form):
        """Both sides of
        psi ^ zeta ^ Omega^{n-2}/(n-2)! = (tr(psi) tr(zeta) - g(psi, J conj zeta)) Omega^n/n!.
        """
        if self.n < 2:
            raise MetricError("identity needs quaternionic dimension >= 2")
        fr = self.geometry.frame
        top = tuple(range(self.N))
        lhs = psi.wedge(zeta).wedge(self.omega_power(self.n - 2)) \
            .coefficient(top) * ComplexScalar(rational(1, _factorial(self.n - 2)))
        jzbar = fr.j_action(fr.conjugate(zeta))
        scal = self._trace_ratio(psi) * self._trace_ratio(zeta) \
            - self.inner_product(psi, jzbar)
        rhs = scal * self._omega_n.coefficient(top) * ComplexScalar(rational(1, _factorial(self.n)))
        return lhs, rhs


def _complement_sign(key, comp, dim: int) -> int:
    """Sign of key ^ comp relative to the increasing top monomial."""
    merged, sign = _merge_sign(key, comp)
    if merged is None or merged != tuple(range(dim)):
        raise ConsistencyError("complement bookkeeping failed")
    return sign


def _merge_sign(ka, kb):
    out = []
    i = j = 0
    flips = 0
    la, lb = len(ka), len(kb)
    while i < la and j < lb:
        if ka[i] == kb[j]:
            return None, 0
        if ka[i] < kb[j]:
            out.append(ka[i])
            i += 1
        else:
            out.append(kb[j])
            j += 1
            flips += la - i
    out.extend(ka[i:])
    out.extend(kb[j:])
    return tuple(out), (-1 if flips & 1 else 1)


# -- spec-level function aliases -------------------------------------------------


def canonical_forms(d, H, m: Metric) -> CanonicalForms:
    return m.canonical_forms()


def curvature(d, H, m: Metric) -> CurvatureData:
    return m.curvature()


def form_inner_product(a: Form, b: Form, m: Metric) -> ComplexScalar:
    if pure_bidegree(a, m.N) != pure_bidegree(b, m.N):
        raise MetricError("inner product pairing needs equal bidegree")
    return m.inner_product(a, b)


def hodge_star(m: Metric, a: Form) -> Form:
    return m.hodge_star(a)


def lefschetz(m: Metric, a: Form) -> Form:
    return m.lefschetz(a)


def lefschetz_adjoint(m: Metric, a: Form) -> Form:
    return m.lefschetz_adjoint(a)


def trace_tr_omega(m: Metric, xi: Form) -> Scalar:
    return m.trace_omega(xi)


def omega_for_L(m: Metric, p: SpherePoint) -> Form:
    return m.omega_for_L(p)
