"""Finite-dimensional graded algebras by structure constants, and the catalog
of real graded division algebras this package studies.

An algebra is a basis with a degree map into a finite abelian group and a
sparse multiplication table with exact cyclotomic entries.  Construction
always validates associativity, graded multiplication and the unit, so a
GradedAlgebra in hand is a certified object.  Structural analysis (center,
commutation bicharacters, graded-division certificates) is exact linear
algebra over the real subfield.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .errors import PreconditionError
from .groups import Bicharacter, FiniteAbelianGroup, quotient_by
from .scalars import Cyclo, Echelon, kernel_over_real_subfield, _lcm

__all__ = [
    "GradedAlgebra",
    "HomogeneousElement",
    "RegularityWitness",
    "build_catalog",
    "catalog_ids",
    "tensor",
    "coarsen_by_quotient",
    "center",
    "detect_regular",
    "detect_complex_bicharacter",
    "check_graded_division",
]


def vec_add(u, v):
    out = dict(u)
    for k, c in v.items():
        s = out.get(k)
        s = c if s is None else s + c
        if s.is_zero():
            out.pop(k, None)
        else:
            out[k] = s
    return out


def vec_scale(u, c):
    if c.is_zero():
        return {}
    return {k: c * x for k, x in u.items()}


def vec_is_zero(u):
    return not u


class HomogeneousElement:
    """A coordinate vector supported on basis indices of a single degree."""

    def __init__(self, algebra, degree, coords):
        algebra.group.check(degree)
        coords = {k: (c if isinstance(c, Cyclo) else Cyclo.rational(c))
                  for k, c in coords.items() if not (isinstance(c, Cyclo) and c.is_zero())}
        for k in coords:
            if algebra.degrees[k] != degree:
                raise ValueError("coordinate %d has degree %s, expected %s" % (
                    k, algebra.degrees[k], degree))
        self.algebra = algebra
        self.degree = degree
        self.coords = coords

    def is_zero(self):
        return not self.coords

    def __repr__(self):
        body = " + ".join("%s*%s" % (c, self.algebra.labels[k])
                          for k, c in sorted(self.coords.items()))
        return "Homogeneous[%s: %s]" % (self.algebra.group.element_to_word(self.degree),
                                        body or "0")


class GradedAlgebra:
    def __init__(self, group, order, labels, degrees, mult, unit, name="algebra",
                 validate=True):
        self.group = group
        self.order = int(order)
        self.labels = list(labels)
        self.dim = len(self.labels)
        self.degrees = [group.check(d) for d in degrees]
        self.name = name
        self.mult = {}
        for (i, j), row in mult.items():
            row = {k: (c if isinstance(c, Cyclo) else Cyclo.rational(c)) for k, c in row.items()}
            row = {k: c for k, c in row.items() if not c.is_zero()}
            if row:
                self.mult[(i, j)] = row
        self.unit = {k: (c if isinstance(c, Cyclo) else Cyclo.rational(c))
                     for k, c in unit.items()}
        self._components = {}
        for idx, d in enumerate(self.degrees):
            self._components.setdefault(d, []).append(idx)
        self._complex = None
        self._complex_checked = False
        if validate:
            self.validate()

    # -- structure ------------------------------------------------------------

    @property
    def support(self):
        return sorted(self._components)

    def component(self, g):
        return self._components.get(g, [])

    def basis_vector(self, idx):
        return {idx: Cyclo.one()}

    def homogeneous(self, degree, coords) -> HomogeneousElement:
        return HomogeneousElement(self, degree, coords)

    def mul_basis(self, i, j):
        return self.mult.get((i, j), {})

    def mul_vec(self, u, v):
        out = {}
        for i, ci in u.items():
            for j, cj in v.items():
                row = self.mult.get((i, j))
                if not row:
                    continue
                c = ci * cj
                for k, ck in row.items():
                    s = out.get(k)
                    s = c * ck if s is None else s + c * ck
                    out[k] = s
        return {k: c for k, c in out.items() if not c.is_zero()}

    def product_of_basis(self, indices):
        acc = None
        for idx in indices:
            acc = self.basis_vector(idx) if acc is None else self.mul_vec(acc, self.basis_vector(idx))
        return self.unit if acc is None else acc

    def validate(self):
        g = self.group
        for (i, j), row in self.mult.items():
            target = g.op(self.degrees[i], self.degrees[j])
            for k in row:
                if self.degrees[k] != target:
                    raise ValueError(
                        "%s: product %s*%s leaves the graded component" % (
                            self.name, self.labels[i], self.labels[j]))
        for i in range(self.dim):
            b = self.basis_vector(i)
            if self.mul_vec(self.unit, b) != b or self.mul_vec(b, self.unit) != b:
                raise ValueError("%s: unit fails at basis element %s" % (self.name, self.labels[i]))
        e = g.identity
        for k in self.unit:
            if self.degrees[k] != e:
                raise ValueError("%s: unit is not in the identity component" % self.name)
        for i in range(self.dim):
            bi = self.basis_vector(i)
            for j in range(self.dim):
                bij = self.mul_basis(i, j)
                for k in range(self.dim):
                    left = self.mul_vec(bij, self.basis_vector(k))
                    right = self.mul_vec(bi, self.mul_basis(j, k))
                    if left != right:
                        raise ValueError(
                            "%s: associativity fails at (%s, %s, %s)" % (
                                self.name, self.labels[i], self.labels[j], self.labels[k]))

    # -- complex structure (central square root of -1 permuting the basis) ----

    def complex_structure(self):
        """A central basis-permuting J with J^2 = -1, or None.

        When present, every component splits into pairs (b, J*b) and exact
        identity/centrality questions only need one substitution per pair,
        because J is central and invertible.
        """
        if self._complex_checked:
            return self._complex
        self._complex_checked = True
        candidate = None
        for idx in range(self.dim):
            v = self.basis_vector(idx)
            sq = self.mul_vec(v, v)
            if sq != vec_scale(self.unit, Cyclo.rational(-1)):
                continue
            if all(self.mul_vec(v, self.basis_vector(j)) == self.mul_vec(self.basis_vector(j), v)
                   for j in range(self.dim)):
                candidate = v
                break
        if candidate is None:
            return None
        # J must permute the basis up to scalars, pairing each component
        partner = {}
        for i in range(self.dim):
            w = self.mul_vec(candidate, self.basis_vector(i))
            if len(w) != 1:
                return None
            ((j, c),) = w.items()
            partner[i] = j
        reps = {}
        for g, idxs in self._components.items():
            chosen, covered = [], set()
            for i in idxs:
                if i in covered:
                    continue
                chosen.append(i)
                covered.add(i)
                covered.add(partner[i])
            if len(covered) != len(idxs) or 2 * len(chosen) != len(idxs):
                return None
            reps[g] = chosen
        self._complex = (candidate, reps)
        return self._complex

    def substitution_reps(self, g):
        """Basis indices enough to decide identities on the component of g."""
        cs = self.complex_structure()
        if cs is not None:
            return cs[1].get(g, [])
        return self.component(g)

    def __repr__(self):
        return "GradedAlgebra(%s, dim=%d, group=%r, N=%d)" % (
            self.name, self.dim, self.group, self.order)


# -- generic constructions -------------------------------------------------------


def tensor(a: GradedAlgebra, b: GradedAlgebra) -> GradedAlgebra:
    """Tensor product with the canonical product-group grading."""
    group = a.group.direct_product(b.group)
    order = _lcm(a.order, b.order)

    def fuse(i, p):
        return i * b.dim + p

    labels = ["%s@%s" % (la, lb) for la in a.labels for lb in b.labels]
    degrees = [a.degrees[i] + b.degrees[p] for i in range(a.dim) for p in range(b.dim)]
    mult = {}
    for (i, j), arow in a.mult.items():
        for (p, q), brow in b.mult.items():
            row = {}
            for k, ca in arow.items():
                for r, cb in brow.items():
                    row[fuse(k, r)] = ca * cb
            mult[(fuse(i, p), fuse(j, q))] = row
    unit = {}
    for k, ca in a.unit.items():
        for r, cb in b.unit.items():
            unit[fuse(k, r)] = ca * cb
    return GradedAlgebra(group, order, labels, degrees, mult, unit,
                         name="%s(x)%s" % (a.name, b.name))


def coarsen_by_quotient(algebra: GradedAlgebra, g) -> GradedAlgebra:
    """Same algebra, degrees pushed through the projection G -> G/<g>."""
    quotient, project = quotient_by(algebra.group, g)
    degrees = [project(d) for d in algebra.degrees]
    return GradedAlgebra(
        quotient, algebra.order, algebra.labels, degrees, algebra.mult, algebra.unit,
        name="%s/<%s>" % (algebra.name, algebra.group.element_to_word(g)))


def center(algebra: GradedAlgebra):
    """Basis of the center, as homogeneous elements.

    For abelian grading groups the homogeneous parts of central elements are
    central, so returning homogeneous elements loses nothing.
    """
    rows = []
    dim = algebra.dim
    for j in range(dim):
        row_for_coord = {}
        for i in range(dim):
            left = algebra.mul_basis(i, j)
            right = algebra.mul_basis(j, i)
            for k in set(left) | set(right):
                c = left.get(k, Cyclo.zero()) - right.get(k, Cyclo.zero())
                if not c.is_zero():
                    row_for_coord.setdefault(k, [Cyclo.zero()] * dim)[i] = c
        rows.extend(row_for_coord.values())
    basis = kernel_over_real_subfield(rows) if rows else [
        [Cyclo.one() if t == s else Cyclo.zero() for t in range(dim)] for s in range(dim)]
    out = []
    for v in basis:
        by_degree = {}
        for idx, c in enumerate(v):
            if not c.is_zero():
                by_degree.setdefault(algebra.degrees[idx], {})[idx] = c
        for degree, coords in sorted(by_degree.items()):
            out.append(HomogeneousElement(algebra, degree, coords))
    # prune to an independent set
    ech = Echelon(dim)
    kept = []
    for h in out:
        vec = [Cyclo.zero()] * dim
        for k, c in h.coords.items():
            vec[k] = c
        if ech.add(vec):
            kept.append(h)
    return kept


class RegularityWitness:
    def __init__(self, reason, pair=None, elements=None, scalar=None):
        self.reason = reason
        self.pair = pair
        self.elements = elements
        self.scalar = scalar

    def __repr__(self):
        return "RegularityWitness(%s, pair=%s, elements=%s)" % (
            self.reason, self.pair, self.elements)


def _commutation_scalar(algebra, g, h):
    """The scalar lam with uv = lam * vu across all basis pairs, or a witness."""
    lam = None
    witness_pair = None
    any_nonzero = False
    for i in algebra.component(g):
        for j in algebra.component(h):
            uv = algebra.mul_basis(i, j)
            vu = algebra.mul_basis(j, i)
            if not vu:
                if uv:
                    return None, RegularityWitness(
                        "uv != 0 but vu = 0", (g, h), (algebra.labels[i], algebra.labels[j]))
                continue
            any_nonzero = True
            k = next(iter(vu))
            cand = uv.get(k, Cyclo.zero()) / vu[k]
            if uv != vec_scale(vu, cand):
                return None, RegularityWitness(
                    "no scalar relates uv and vu", (g, h),
                    (algebra.labels[i], algebra.labels[j]))
            if lam is None:
                lam = cand
                witness_pair = (algebra.labels[i], algebra.labels[j])
            elif lam != cand:
                return None, RegularityWitness(
                    "commutation scalar differs between basis pairs", (g, h),
                    (witness_pair, (algebra.labels[i], algebra.labels[j])))
    if not any_nonzero:
        return None, RegularityWitness("all products of the components vanish (P1)", (g, h))
    return lam, None


def detect_regular(algebra: GradedAlgebra):
    """Detect a real regular grading: returns (Bicharacter, None) or (None, witness).

    Checks that a single real scalar per degree pair relates uv and vu for all
    homogeneous basis pairs, and that products of components never vanish.
    """
    support = algebra.support
    group = algebra.group
    if set(support) != set(group.elements()):
        return None, RegularityWitness("support is a proper subset of the grading group")
    values = {}
    for g in support:
        for h in support:
            lam, witness = _commutation_scalar(algebra, g, h)
            if witness is not None:
                # a complex scalar through a central J may still exist; if so,
                # report the sharper reason (regular over C but not over R)
                cbeta, _ = detect_complex_bicharacter(algebra)
                if cbeta is not None:
                    val = cbeta.eval(*witness.pair) if witness.pair else None
                    return None, RegularityWitness(
                        "commutation scalar is not real", witness.pair, scalar=val)
                return None, witness
            if not lam.is_real():
                return None, RegularityWitness(
                    "commutation scalar is not real", (g, h), scalar=lam)
            values[(g, h)] = lam
    n = _lcm(2, algebra.order)
    table = [[values[(group.generator(i), group.generator(j))]
              for j in range(group.rank)] for i in range(group.rank)]
    beta = Bicharacter(group, n, table)
    for (g, h), lam in values.items():
        assert beta.eval(g, h) == lam, "commutation function is not multiplicative"
    return beta, None


def complex_unit(algebra: GradedAlgebra):
    """A central homogeneous element J of the identity component with J^2 = -1."""
    cs = algebra.complex_structure()
    if cs is not None:
        j_vec = cs[0]
        if len(j_vec) == 1:
            idx = next(iter(j_vec))
            if algebra.degrees[idx] == algebra.group.identity:
                return j_vec
    minus_one = vec_scale(algebra.unit, Cyclo.rational(-1))
    for h in center(algebra):
        if h.degree != algebra.group.identity:
            continue
        v = h.coords
        if algebra.mul_vec(v, v) == minus_one:
            return v
    return None


def detect_complex_bicharacter(algebra: GradedAlgebra):
    """Commutation bicharacter allowing complex scalars through a central J.

    Returns (Bicharacter over Q(zeta_lcm(N,4)), J) or (None, witness).  The
    scalar for a pair (g, h) is lam1 + lam2*i, realized in the algebra as
    uv = lam1*(vu) + lam2*(J*vu).
    """
    j_vec = complex_unit(algebra)
    if j_vec is None:
        return None, RegularityWitness("no central square root of -1")
    n = _lcm(algebra.order, 4)
    i_scalar = Cyclo.zeta(n, n // 4)
    support = algebra.support
    group = algebra.group
    if set(support) != set(group.elements()):
        return None, RegularityWitness("support is a proper subset of the grading group")
    values = {}
    for g in support:
        for h in support:
            lam = None
            for i in algebra.component(g):
                for j in algebra.component(h):
                    uv = algebra.mul_basis(i, j)
                    vu = algebra.mul_basis(j, i)
                    if not vu:
                        if uv:
                            return None, RegularityWitness("uv != 0 but vu = 0", (g, h))
                        continue
                    jvu = algebra.mul_vec(j_vec, vu)
                    if lam is None:
                        rows = []
                        for k in set(vu) | set(jvu) | set(uv):
                            rows.append([vu.get(k, Cyclo.zero()), jvu.get(k, Cyclo.zero()),
                                         -uv.get(k, Cyclo.zero())])
                        sols = [v for v in kernel_over_real_subfield(rows)
                                if not v[2].is_zero()]
                        if not sols:
                            return None, RegularityWitness(
                                "no complex commutation scalar", (g, h))
                        sol = sols[0]
                        lam = (sol[0] / sol[2], sol[1] / sol[2])
                    l1, l2 = lam
                    expect = vec_add(vec_scale(vu, l1), vec_scale(jvu, l2))
                    if uv != expect:
                        return None, RegularityWitness(
                            "complex commutation scalar differs between pairs", (g, h))
            if lam is None:
                return None, RegularityWitness("all products vanish (P1)", (g, h))
            values[(g, h)] = lam[0] + lam[1] * i_scalar
    table = [[values[(group.generator(i), group.generator(j))]
              for j in range(group.rank)] for i in range(group.rank)]
    beta = Bicharacter(group, n, table)
    for (g, h), lam in values.items():
        assert beta.eval(g, h) == lam
    return beta, j_vec


# -- graded division certificates --------------------------------------------------


def invert(algebra: GradedAlgebra, v):
    """Two-sided inverse of v in the algebra (real coordinates), or None."""
    dim = algebra.dim
    cols = []
    for i in range(dim):
        cols.append(algebra.mul_vec(v, algebra.basis_vector(i)))
    rows = []
    for k in range(dim):
        row = [cols[i].get(k, Cyclo.zero()) for i in range(dim)]
        row.append(-algebra.unit.get(k, Cyclo.zero()))
        rows.append(row)
    for sol in kernel_over_real_subfield(rows):
        if sol[dim].is_zero():
            continue
        t = sol[dim].inv()
        y = {i: sol[i] * t for i in range(dim) if not sol[i].is_zero()}
        if algebra.mul_vec(v, y) == dict(algebra.unit) and \
                algebra.mul_vec(y, v) == dict(algebra.unit):
            return y
    return None


def _solve_in_span(algebra, span_vecs, target):
    """Coefficients writing target in the span of span_vecs, or None."""
    dim = algebra.dim
    rows = []
    for k in range(dim):
        row = [v.get(k, Cyclo.zero()) for v in span_vecs]
        row.append(-Cyclo.one() * target.get(k, Cyclo.zero()))
        rows.append(row)
    for sol in kernel_over_real_subfield(rows):
        if not sol[-1].is_zero():
            t = sol[-1].inv()
            return [c * t for c in sol[:-1]]
    return None


def _classify_identity_component(algebra: GradedAlgebra):
    """Classify A_e as R, C or H by exact normalization, else a failure reason.

    The classification is a validator for the shapes the catalog can produce,
    not a general real-division-algebra decision procedure.
    """
    e = algebra.group.identity
    comp = algebra.component(e)
    d = len(comp)
    unit_vec = dict(algebra.unit)

    def pure_part(v):
        # require v^2 in span{1, v}; return (p, dscalar) with p^2 = dscalar * 1
        sq = algebra.mul_vec(v, v)
        coeffs = _solve_in_span(algebra, [unit_vec, v], sq)
        if coeffs is None:
            return None
        s, t = coeffs
        half_t = t * Cyclo.rational(Fraction(1, 2))
        p = vec_add(v, vec_scale(unit_vec, -half_t))
        dval = s + half_t * half_t
        return p, dval

    if d == 1:
        k = comp[0]
        if algebra.unit.get(k) is None or any(kk != k for kk in algebra.unit):
            return None, "one-dimensional identity component does not contain the unit"
        return "R", None
    if d == 2:
        i1, i2 = comp
        if algebra.mul_basis(i1, i2) != algebra.mul_basis(i2, i1):
            return None, "two-dimensional identity component is not commutative"
        ech = Echelon(algebra.dim)
        uvec = [Cyclo.zero()] * algebra.dim
        for k, c in unit_vec.items():
            uvec[k] = c
        ech.add(uvec)
        w_idx = next(i for i in comp
                     if not ech.contains([Cyclo.one() if t == i else Cyclo.zero()
                                          for t in range(algebra.dim)]))
        res = pure_part(algebra.basis_vector(w_idx))
        if res is None:
            return None, "identity component element with square outside span{1, w}"
        _, dval = res
        if not dval.is_real() or dval.real_sign() >= 0:
            return None, "two-dimensional identity component is split (not C)"
        return "C", None
    if d == 4:
        # quaternion normalization
        dim = algebra.dim
        ech = Echelon(dim)
        uvec = [Cyclo.zero()] * dim
        for k, c in unit_vec.items():
            uvec[k] = c
        ech.add(uvec)
        pures = []
        for idx in comp:
            vec = [Cyclo.one() if t == idx else Cyclo.zero() for t in range(dim)]
            if ech.contains(vec):
                continue
            res = pure_part(algebra.basis_vector(idx))
            if res is None:
                return None, "element with square outside span{1, w}"
            p, dval = res
            if not dval.is_real() or dval.real_sign() >= 0:
                return None, "pure element with nonnegative square (split algebra)"
            if pures:
                p1, d1 = pures[0]
                sym = vec_add(algebra.mul_vec(p1, p), algebra.mul_vec(p, p1))
                coeffs = _solve_in_span(algebra, [unit_vec], sym)
                if coeffs is None:
                    return None, "symmetrized product is not scalar"
                c = coeffs[0] * Cyclo.rational(Fraction(1, 2))
                p = vec_add(p, vec_scale(p1, -(c / d1)))
                if vec_is_zero(p):
                    continue
                res2 = pure_part(p)
                if res2 is None:
                    return None, "orthogonalized element is not pure"
                p, dval = res2
                if not dval.is_real() or dval.real_sign() >= 0:
                    return None, "orthogonalized pure element with nonnegative square"
                if vec_add(algebra.mul_vec(p1, p), algebra.mul_vec(p, p1)):
                    return None, "orthogonalization failed to anticommute"
            pures.append((p, dval))
            new_vec = [Cyclo.zero()] * dim
            for k, c in p.items():
                new_vec[k] = c
            ech.add(new_vec)
            if len(pures) == 2:
                break
        if len(pures) < 2:
            return None, "identity component has no anticommuting pure pair"
        (p1, d1), (p2, d2) = pures
        k_el = algebra.mul_vec(p1, p2)
        span = Echelon(dim)
        for v in (unit_vec, p1, p2, k_el):
            dense = [Cyclo.zero()] * dim
            for kk, c in v.items():
                dense[kk] = c
            span.add(dense)
        if span.dim != 4:
            return None, "1, i, j, ij do not span the identity component"
        return "H", None
    return None, "identity component dimension %d is not 1, 2 or 4" % d


def check_graded_division(algebra: GradedAlgebra):
    """Certificate that the grading is a division grading, or a failure reason.

    Verifies the unit, classifies the identity component as R, C or H, and for
    every supported degree finds an invertible u_g with A_g = A_e * u_g.
    """
    cls, reason = _classify_identity_component(algebra)
    if cls is None:
        return False, {"reason": reason}
    units = {}
    e = algebra.group.identity
    for g in algebra.support:
        comp = algebra.component(g)
        candidates = [algebra.basis_vector(i) for i in comp]
        candidates += [vec_add(a, b) for a, b in itertools.combinations(candidates, 2)]
        u_g = None
        for cand in candidates:
            if invert(algebra, cand) is not None:
                u_g = cand
                break
        if u_g is None:
            return False, {"reason": "component %s has no invertible element among "
                                     "basis candidates" % algebra.group.element_to_word(g),
                           "degree": g}
        shifted = Echelon(algebra.dim)
        for i in algebra.component(e):
            prod = algebra.mul_vec(algebra.basis_vector(i), u_g)
            dense = [Cyclo.zero()] * algebra.dim
            for k, c in prod.items():
                dense[k] = c
            shifted.add(dense)
        if shifted.dim != len(comp):
            return False, {"reason": "A_e * u_g does not span the component of %s"
                                     % algebra.group.element_to_word(g), "degree": g}
        units[g] = u_g
    return True, {"e_class": cls, "units": units}


# -- catalog ------------------------------------------------------------------------


def _sign_table_algebra(group, order, entries, degrees_by_label, name):
    """Algebra whose basis multiplies into single basis elements with scalar factors.

    entries: dict (label_i, label_j) -> (scalar, label_k).
    """
    labels = list(degrees_by_label)
    index = {lab: i for i, lab in enumerate(labels)}
    degrees = [degrees_by_label[lab] for lab in labels]
    mult = {}
    for (li, lj), (c, lk) in entries.items():
        c = c if isinstance(c, Cyclo) else Cyclo.rational(c)
        if not c.is_zero():
            mult[(index[li], index[lj])] = {index[lk]: c}
    unit = {0: Cyclo.one()}
    return GradedAlgebra(group, order, labels, degrees, mult, unit, name=name)


_M2_TABLE = {
    # products of I, A, B, C with A=diag(1,-1), B=offdiag(1,1), C=offdiag(1,-1)
    ("I", "I"): (1, "I"), ("I", "A"): (1, "A"), ("I", "B"): (1, "B"), ("I", "C"): (1, "C"),
    ("A", "I"): (1, "A"), ("B", "I"): (1, "B"), ("C", "I"): (1, "C"),
    ("A", "A"): (1, "I"), ("B", "B"): (1, "I"), ("C", "C"): (-1, "I"),
    ("A", "B"): (1, "C"), ("B", "A"): (-1, "C"),
    ("A", "C"): (1, "B"), ("C", "A"): (-1, "B"),
    ("B", "C"): (-1, "A"), ("C", "B"): (1, "A"),
}


def build_m2_4():
    g = FiniteAbelianGroup((2, 2), ("a", "b"))
    degs = {"I": (0, 0), "A": (1, 0), "B": (0, 1), "C": (1, 1)}
    return _sign_table_algebra(g, 1, _M2_TABLE, degs, "m2-4")


def build_h4():
    g = FiniteAbelianGroup((2, 2), ("a", "b"))
    table = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("j", "1"): (1, "j"), ("k", "1"): (1, "k"),
        ("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
        ("i", "j"): (1, "k"), ("j", "i"): (-1, "k"),
        ("j", "k"): (1, "i"), ("k", "j"): (-1, "i"),
        ("k", "i"): (1, "j"), ("i", "k"): (-1, "j"),
    }
    degs = {"1": (0, 0), "i": (1, 0), "j": (0, 1), "k": (1, 1)}
    return _sign_table_algebra(g, 1, table, degs, "h4")


def build_c2():
    g = FiniteAbelianGroup((2,), ("a0",))
    table = {("1", "1"): (1, "1"), ("1", "i"): (1, "i"),
             ("i", "1"): (1, "i"), ("i", "i"): (-1, "1")}
    degs = {"1": (0,), "i": (1,)}
    return _sign_table_algebra(g, 1, table, degs, "c2")


def build_h_trivial():
    a = build_h4()
    trivial = FiniteAbelianGroup(())
    return GradedAlgebra(trivial, 1, a.labels, [()] * a.dim, a.mult, a.unit, name="h-triv")


def build_m2r_trivial():
    trivial = FiniteAbelianGroup(())
    degs = {"E11": (), "E12": (), "E21": (), "E22": ()}
    entries = {}
    for (i, j) in itertools.product((1, 2), repeat=2):
        for (k, l) in itertools.product((1, 2), repeat=2):
            if j == k:
                entries[("E%d%d" % (i, j), "E%d%d" % (k, l))] = (1, "E%d%d" % (i, l))
    labels = list(degs)
    index = {lab: t for t, lab in enumerate(labels)}
    mult = {(index[a], index[b]): {index[c]: Cyclo.rational(s)} for (a, b), (s, c) in entries.items()}
    unit = {index["E11"]: Cyclo.one(), index["E22"]: Cyclo.one()}
    return GradedAlgebra(trivial, 1, labels, [()] * 4, mult, unit, name="m2r-triv")


def build_m2_elem():
    """M2(R) with the elementary Z2-grading: diagonal even, off-diagonal odd."""
    g = FiniteAbelianGroup((2,), ("a",))
    degs = {"E11": (0,), "E22": (0,), "E12": (1,), "E21": (1,)}
    labels = list(degs)
    index = {lab: t for t, lab in enumerate(labels)}
    mult = {}
    for (i, j) in itertools.product((1, 2), repeat=2):
        for (k, l) in itertools.product((1, 2), repeat=2):
            if j == k:
                mult[(index["E%d%d" % (i, j)], index["E%d%d" % (k, l)])] = \
                    {index["E%d%d" % (i, l)]: Cyclo.one()}
    unit = {index["E11"]: Cyclo.one(), index["E22"]: Cyclo.one()}
    return GradedAlgebra(g, 1, labels, [degs[lab] for lab in labels], mult, unit,
                         name="m2-elem")


def build_m2_8():
    """The Z4 x Z2 division grading on M2(C) by eighth roots of unity."""
    g = FiniteAbelianGroup((4, 2), ("a", "b"))
    omega = Cyclo.zeta(8)
    i_s = Cyclo.zeta(8, 2)
    one = Cyclo.one()
    # scalar * matrix-letter presentation of each component's spanning element
    span = {
        (0, 0): (one, "I"), (1, 0): (omega, "A"), (2, 0): (i_s, "I"), (3, 0): (i_s * omega, "A"),
        (0, 1): (one, "C"), (1, 1): (omega, "B"), (2, 1): (i_s, "C"), (3, 1): (i_s * omega, "B"),
    }
    labels = []
    degrees = []
    for d in sorted(span):
        s, m = span[d]
        labels.append("u[%s]" % g.element_to_word(d))
        degrees.append(d)
    index = {d: t for t, d in enumerate(sorted(span))}
    mat_mult = {(a, b): _M2_TABLE[(a, b)] for (a, b) in _M2_TABLE}
    mult = {}
    for d1 in sorted(span):
        s1, m1 = span[d1]
        for d2 in sorted(span):
            s2, m2 = span[d2]
            sgn, m3 = mat_mult[(m1, m2)]
            d3 = g.op(d1, d2)
            s3, m3_expected = span[d3]
            assert m3 == m3_expected, "component structure broken"
            coeff = s1 * s2 * Cyclo.rational(sgn) / s3
            mult[(index[d1], index[d2])] = {index[d3]: coeff}
    unit = {index[(0, 0)]: one}
    return GradedAlgebra(g, 8, labels, degrees, mult, unit, name="m2-8")


def build_twisted_group_algebra(beta: Bicharacter, name=None, order=None):
    """P(beta) over R: the complex twisted group algebra of a 2-cocycle
    realizing beta, viewed as a real algebra.

    The cocycle on normal forms g = prod gi^ai is
    sigma(g, h) = prod_{i>j} beta(g_i, g_j)^(a_i b_j), which satisfies the
    cocycle identity and has sigma(g,h)/sigma(h,g) = beta(g,h) whenever beta
    is alternating (beta(g,g) = 1); that is validated at build time.
    """
    group = beta.group
    for i in range(group.rank):
        if not beta.table[i][i].is_one():
            raise PreconditionError(
                "twisted group algebra needs an alternating bicharacter "
                "(beta(g,g) = 1 on generators)")
    n = _lcm(beta.order, 4) if order is None else order
    i_s = Cyclo.zeta(n, n // 4)

    def sigma(g, h):
        out = Cyclo.one()
        for i in range(group.rank):
            if not g[i]:
                continue
            for j in range(group.rank):
                if j < i and h[j]:
                    out = out * beta.table[i][j] ** (g[i] * h[j])
        return out

    elements = group.elements()
    if len(elements) <= 12:
        for g, h, k in itertools.product(elements, repeat=3):
            lhs = sigma(g, h) * sigma(group.op(g, h), k)
            rhs = sigma(g, group.op(h, k)) * sigma(h, k)
            assert lhs == rhs, "cocycle identity fails"
    labels = []
    degrees = []
    index = {}
    for d in elements:
        for r in (0, 1):
            index[(d, r)] = len(labels)
            labels.append(("i*" if r else "") + "u[%s]" % group.element_to_word(d))
            degrees.append(d)
    mult = {}
    for d1 in elements:
        for d2 in elements:
            c = sigma(d1, d2).lift(n)
            d3 = group.op(d1, d2)
            for r1 in (0, 1):
                for r2 in (0, 1):
                    # i^(r1+r2) * c, split into real and i parts
                    total = c * i_s ** (r1 + r2)
                    t_re = total.real_part()
                    t_im = total.imag_over_i()
                    row = {}
                    if not t_re.is_zero():
                        row[index[(d3, 0)]] = t_re
                    if not t_im.is_zero():
                        row[index[(d3, 1)]] = t_im
                    mult[(index[(d1, r1)], index[(d2, r2)])] = row
    unit = {index[(group.identity, 0)]: Cyclo.one()}
    algebra = GradedAlgebra(group, n, labels, degrees, mult, unit,
                            name=name or "p-beta")
    # sanity: the commutation scalars reproduce beta (uv = beta(g,h) * vu,
    # the i-part realized through the central element J = i*u_e)
    j_vec = {index[(group.identity, 1)]: Cyclo.one()}
    for g in elements:
        for h in elements:
            uv = algebra.mul_basis(index[(g, 0)], index[(h, 0)])
            vu = algebra.mul_basis(index[(h, 0)], index[(g, 0)])
            b = beta.eval(g, h).lift(n)
            expected = vec_add(vec_scale(vu, b.real_part()),
                               vec_scale(algebra.mul_vec(j_vec, vu), b.imag_over_i()))
            assert uv == expected, "twisted group algebra does not realize beta"
    return algebra


def build_pauli(n: int):
    """Pauli division grading on M_n(C) as a real algebra, by Z_n x Z_n.

    Clock and shift matrices X, Y with XY = eps YX for a primitive n-th root
    eps; each component is the real span of a matrix unit and its i-multiple.
    """
    if n < 2:
        raise PreconditionError("pauli grading needs n >= 2")
    group = FiniteAbelianGroup((n, n), ("x", "y"))
    eps = Cyclo.zeta(n)
    beta_table = [[Cyclo.one(), eps], [eps.inv(), Cyclo.one()]]
    beta = Bicharacter(group, n, beta_table)
    algebra = build_twisted_group_algebra(beta, name="pauli-%d" % n, order=4 * n)
    return algebra


def build_d_cyclic(m: int, eps: int):
    """Commutative cyclic division grading: one generator u with u^m = eps."""
    if m <= 1:
        raise PreconditionError("d-cyclic needs m > 1")
    if eps not in (1, -1):
        raise PreconditionError("d-cyclic needs eps in {1, -1}")
    g = FiniteAbelianGroup((m,), ("g",))
    labels = ["u^%d" % a for a in range(m)]
    degrees = [(a,) for a in range(m)]
    mult = {}
    for a in range(m):
        for b in range(m):
            c = Cyclo.rational(eps if a + b >= m else 1)
            mult[(a, b)] = {(a + b) % m: c}
    return GradedAlgebra(g, 1, labels, degrees, mult, {0: Cyclo.one()},
                         name="d-cyclic(%d,%d)" % (m, eps))


def _is_two_power(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


def build_d_pair(k: int, l: int, mu: int, nu: int):
    """Division grading on a k*l-dimensional algebra generated by u, v with
    u^k = mu, v^l = nu, uv = -vu; k, l powers of two (>= 2)."""
    if not (_is_two_power(k) and _is_two_power(l)) or k < 2 or l < 2:
        raise PreconditionError("d-pair needs k, l powers of two, >= 2")
    if mu not in (1, -1) or nu not in (1, -1):
        raise PreconditionError("d-pair needs mu, nu in {1, -1}")
    g = FiniteAbelianGroup((k, l), ("g", "h"))
    labels = ["u^%d.v^%d" % (a, b) for a in range(k) for b in range(l)]
    index = {(a, b): a * l + b for a in range(k) for b in range(l)}
    degrees = [(a, b) for a in range(k) for b in range(l)]
    mult = {}
    for a, b in itertools.product(range(k), range(l)):
        for a2, b2 in itertools.product(range(k), range(l)):
            sign = -1 if (b * a2) % 2 else 1
            coeff = sign * (mu if a + a2 >= k else 1) * (nu if b + b2 >= l else 1)
            mult[(index[(a, b)], index[(a2, b2)])] = \
                {index[((a + a2) % k, (b + b2) % l)]: Cyclo.rational(coeff)}
    return GradedAlgebra(g, 1, labels, degrees, mult, {0: Cyclo.one()},
                         name="d-pair(%d,%d;%d,%d)" % (k, l, mu, nu))


def build_e_series(eps: int, n: int):
    """Division grading by Z_n with identity component C and a noncentral C:
    generated by u (degree e, u^2 = -1) and v (degree g, v^n = 1, uv = -vu).

    For n a power of two the two sign choices generate the same subalgebra
    (-v generates whatever v does), so eps only tags the name.
    """
    if eps not in (1, -1):
        raise PreconditionError("e-series needs eps in {1, -1}")
    if not _is_two_power(n) or n < 2:
        raise PreconditionError("e-series needs n a power of two, >= 2")
    g = FiniteAbelianGroup((n,), ("g",))
    labels = []
    index = {}
    degrees = []
    for a in range(n):
        for r in (0, 1):
            index[(a, r)] = len(labels)
            labels.append("v^%d%s" % (a, ".u" if r else ""))
            degrees.append((a,))
    mult = {}
    for a, r in itertools.product(range(n), (0, 1)):
        for a2, r2 in itertools.product(range(n), (0, 1)):
            sign = -1 if (r * a2) % 2 else 1
            if r and r2:
                sign = -sign  # u^2 = -1
            mult[(index[(a, r)], index[(a2, r2)])] = \
                {index[((a + a2) % n, (r + r2) % 2)]: Cyclo.rational(sign)}
    return GradedAlgebra(g, 1, labels, degrees, mult, {index[(0, 0)]: Cyclo.one()},
                         name="e-series(%d,%d)" % (eps, n))


_CATALOG = {
    "c2": lambda **kw: build_c2(),
    "m2-4": lambda **kw: build_m2_4(),
    "m2-2": lambda **kw: coarsen_by_quotient(build_m2_4(), (1, 1)),
    "h4": lambda **kw: build_h4(),
    "h2": lambda **kw: coarsen_by_quotient(build_h4(), (1, 0)),
    "h-triv": lambda **kw: build_h_trivial(),
    "m2r-triv": lambda **kw: build_m2r_trivial(),
    "m2-elem": lambda **kw: build_m2_elem(),
    "m2-8": lambda **kw: build_m2_8(),
    "m2c-z4": lambda **kw: coarsen_by_quotient(build_m2_8(), (0, 1)),
    "pauli": lambda n=None, **kw: build_pauli(_require_int("pauli", "n", n)),
    "d-cyclic": lambda m=None, eps=1, **kw: build_d_cyclic(
        _require_int("d-cyclic", "m", m), int(eps)),
    "d-pair": lambda k=None, l=None, mu=1, nu=1, **kw: build_d_pair(
        _require_int("d-pair", "k", k), _require_int("d-pair", "l", l), int(mu), int(nu)),
    "e-series": lambda eps=1, n=None, **kw: build_e_series(
        int(eps), _require_int("e-series", "n", n)),
}


def _require_int(catalog_id, key, value):
    if value is None:
        raise PreconditionError("catalog entry %r requires parameter %r" % (catalog_id, key))
    return int(value)


def catalog_ids():
    return sorted(_CATALOG)


def build_catalog(name: str, **params) -> GradedAlgebra:
    """Build a catalog algebra; tensor products via 'id1@id2@...'."""
    name = name.strip()
    if "@" in name:
        parts = [p.strip() for p in name.split("@")]
        algebras = [build_catalog(p, **params) for p in parts]
        out = algebras[0]
        for nxt in algebras[1:]:
            out = tensor(out, nxt)
        return out
    if name not in _CATALOG:
        raise PreconditionError("unknown catalog id %r (known: %s)" % (name, catalog_ids()))
    return _CATALOG[name](**params)
