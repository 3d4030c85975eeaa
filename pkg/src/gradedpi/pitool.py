"""The identity engine: membership tests, multilinear identity and central
spaces, consequence spans of generator sets, the generator families for the
catalog algebras, basis transfer and lifting, the rewriting reducer for
division gradings with complex commutation scalars, and verification reports.

Conventions that the engine depends on:

* Substitutions replace each template variable by a monomial in the target
  variables; a variable of identity degree may also receive the empty
  monomial 1 (the free algebra is unital).  Without that convention the
  padded central generator sets would not generate the identity parts they
  are responsible for.
* Consequence spans are computed per multidegree.  A multidegree is the
  ordered tuple of degrees assigned to variables 1..n; permuting variables is
  a free-algebra automorphism, so verification work is done once per sorted
  orbit and recorded with the orbit size.
"""

from __future__ import annotations

import itertools
import json
import time

from .algebras import (
    GradedAlgebra,
    center,
    detect_complex_bicharacter,
    detect_regular,
    invert,
)
from .errors import PreconditionError, ResourceRefusal
from .freealg import (
    FreePoly,
    monomial_poly,
    multilinearize,
    reorder_scalar,
    transfer_phi,
    lift_poly,
)
from .groups import Bicharacter, quotient_by
from .scalars import Cyclo, Echelon, _lcm

__all__ = [
    "GeneratorSet",
    "MultidegreeBasis",
    "Subspace",
    "VerificationReport",
    "is_identity",
    "is_central",
    "multilinear_identity_space",
    "multilinear_central_space",
    "tideal_consequences",
    "tspace_consequences",
    "family_regular",
    "family_pauli",
    "pauli_reduce",
    "replay_certificate",
    "transfer_basis",
    "lift_basis",
    "verify_basis",
]

DEFAULT_DEGREE_BOUND = 6


# -- multidegree bases --------------------------------------------------------------


class MultidegreeBasis:
    """The n! monomials multilinear in variables 1..n of fixed degrees."""

    def __init__(self, group, degrees):
        self.group = group
        self.degrees = tuple(group.check(tuple(d)) for d in degrees)
        self.letters = tuple((i + 1, d) for i, d in enumerate(self.degrees))
        self.monomials = [tuple(p) for p in itertools.permutations(self.letters)]
        self.index = {m: k for k, m in enumerate(self.monomials)}
        self.ncols = len(self.monomials)

    def to_vector(self, poly: FreePoly):
        vec = [Cyclo.zero()] * self.ncols
        for mono, c in poly.terms.items():
            k = self.index.get(mono)
            if k is None:
                raise ValueError("monomial outside this multidegree component")
            vec[k] = vec[k] + c
        return vec

    def from_vector(self, vec, order=1) -> FreePoly:
        terms = {}
        for k, c in enumerate(vec):
            if not (isinstance(c, Cyclo) and c.is_zero()):
                terms[self.monomials[k]] = c
        return FreePoly(self.group, order, terms)

    def words(self):
        return [self.group.element_to_word(d) for d in self.degrees]


class Subspace:
    """A subspace of a multidegree component, held in reduced echelon form."""

    def __init__(self, pg: MultidegreeBasis, vectors=()):
        self.pg = pg
        self.echelon = Echelon(pg.ncols)
        for v in vectors:
            self.echelon.add(v)

    @property
    def dim(self):
        return self.echelon.dim

    def basis(self):
        return self.echelon.basis()

    def contains(self, vec):
        return self.echelon.contains(vec)

    def basis_polys(self, order=1):
        return [self.pg.from_vector(v, order) for v in self.echelon.basis()]


# -- membership -----------------------------------------------------------------------


def _substitution_tuples(algebra, letters):
    """Tuples of basis substitutions sufficient for identity questions.

    Components with a central basis-permuting square root of -1 contribute one
    representative per (b, J b) pair: substituting J b scales every value by
    the invertible central J, so it changes no vanishing or centrality verdict.
    """
    pools = []
    for _, d in letters:
        reps = algebra.substitution_reps(d)
        if not reps:
            return None  # empty component: everything vanishes
        pools.append([algebra.basis_vector(i) for i in reps])
    return itertools.product(*pools)


def _lean_value(algebra, lin, letters, choice):
    """Value of a multilinear polynomial at one substitution, no revalidation."""
    assign = dict(zip(letters, choice))
    out = {}
    cache = {(): dict(algebra.unit)}
    for mono, coeff in lin.terms.items():
        value = None
        start = 0
        for cut in range(len(mono), -1, -1):
            if mono[:cut] in cache:
                value = cache[mono[:cut]]
                start = cut
                break
        for k in range(start, len(mono)):
            value = algebra.mul_vec(value, assign[mono[k]])
            cache[mono[: k + 1]] = value
        for k, c in value.items():
            prev = out.get(k)
            s = coeff * c if prev is None else prev + coeff * c
            out[k] = s
    return {k: c for k, c in out.items() if not c.is_zero()}


def _polarized(poly):
    return [poly] if poly.is_multilinear() else multilinearize(poly)


def is_identity(algebra: GradedAlgebra, poly: FreePoly):
    """Exact graded-identity test; returns (bool, witness substitution or None).

    Non-multilinear input is fully polarized first (characteristic zero), and
    vanishing is checked on all representative basis substitutions, which
    suffices by multilinearity.
    """
    for lin in _polarized(poly):
        letters = lin.letters()
        for d in {d for _, d in letters}:
            algebra.group.check(d)
        tuples = _substitution_tuples(algebra, letters)
        if tuples is None:
            continue
        for choice in tuples:
            if _lean_value(algebra, lin, letters, choice):
                witness = {lt: _vec_label(algebra, v)
                           for lt, v in zip(letters, choice)}
                return False, witness
    return True, None


def _vec_label(algebra, vec):
    return " + ".join("%s*%s" % (c, algebra.labels[k]) if not c.is_one()
                      else algebra.labels[k] for k, c in sorted(vec.items()))


def _is_central_value(algebra, value):
    for j in range(algebra.dim):
        b = algebra.basis_vector(j)
        if algebra.mul_vec(value, b) != algebra.mul_vec(b, value):
            return False, algebra.labels[j]
    return True, None


def is_central(algebra: GradedAlgebra, poly: FreePoly):
    """Classify as "identity", "proper-central" or "neither" (with witness)."""
    all_zero = True
    for lin in _polarized(poly):
        letters = lin.letters()
        for d in {d for _, d in letters}:
            algebra.group.check(d)
        tuples = _substitution_tuples(algebra, letters)
        if tuples is None:
            continue
        for choice in tuples:
            value = _lean_value(algebra, lin, letters, choice)
            if not value:
                continue
            all_zero = False
            ok, blabel = _is_central_value(algebra, value)
            if not ok:
                witness = {lt: _vec_label(algebra, v)
                           for lt, v in zip(letters, choice)}
                return "neither", (witness, blabel)
    return ("identity", None) if all_zero else ("proper-central", None)


# -- multilinear spaces -----------------------------------------------------------------


def _component_rows(algebra, pg, central: bool):
    """Evaluation rows over the n! monomials; optionally commutator-augmented."""
    letters = pg.letters
    n = len(letters)
    pools = []
    for _, d in letters:
        reps = algebra.substitution_reps(d)
        if not reps:
            return None
        pools.append(reps)
    rows = []
    zero = Cyclo.zero()
    basis_vecs = [algebra.basis_vector(j) for j in range(algebra.dim)]
    for choice in itertools.product(*pools):
        assign = {letters[k]: basis_vecs[choice[k]] for k in range(n)}
        values = []
        cache = {(): dict(algebra.unit)}
        for mono in pg.monomials:
            value = None
            for cut in range(len(mono), -1, -1):
                if mono[:cut] in cache:
                    value = cache[mono[:cut]]
                    start = cut
                    break
            for k in range(start, len(mono)):
                value = algebra.mul_vec(value, assign[mono[k]])
                cache[mono[: k + 1]] = value
            values.append(value)
        if not central:
            coords = sorted({k for v in values for k in v})
            for k in coords:
                rows.append([v.get(k, zero) for v in values])
        else:
            for j in range(algebra.dim):
                b = basis_vecs[j]
                comms = [None] * len(values)
                coords = set()
                for t, v in enumerate(values):
                    left = algebra.mul_vec(v, b)
                    right = algebra.mul_vec(b, v)
                    diff = dict(left)
                    for kk, c in right.items():
                        diff[kk] = diff.get(kk, zero) - c
                    diff = {kk: c for kk, c in diff.items() if not c.is_zero()}
                    comms[t] = diff
                    coords.update(diff)
                for kk in sorted(coords):
                    rows.append([comms[t].get(kk, zero) for t in range(len(values))])
    return rows


def _space(algebra, degrees, central, bound):
    pg = MultidegreeBasis(algebra.group, degrees)
    n = len(pg.letters)
    if n < 1:
        raise PreconditionError("multidegree needs at least one variable")
    if n > bound:
        raise ResourceRefusal(
            "multidegree of length %d exceeds bound %d (component dimension %d)" % (
                n, bound, _factorial(n)))
    rows = _component_rows(algebra, pg, central)
    if rows is None:
        # a degree outside the support: everything is an identity
        full = [[Cyclo.one() if i == j else Cyclo.zero() for j in range(pg.ncols)]
                for i in range(pg.ncols)]
        return Subspace(pg, full)
    from .scalars import kernel_over_real_subfield

    seen = set()
    unique_rows = []
    for r in rows:
        key = tuple(r)
        if key not in seen and any(not c.is_zero() for c in r):
            seen.add(key)
            unique_rows.append(r)
    kernel = kernel_over_real_subfield(unique_rows) if unique_rows else [
        [Cyclo.one() if i == j else Cyclo.zero() for j in range(pg.ncols)]
        for i in range(pg.ncols)]
    return Subspace(pg, kernel)


def _factorial(n):
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def multilinear_identity_space(algebra, degrees, bound=DEFAULT_DEGREE_BOUND) -> Subspace:
    """Exact kernel of the evaluation map on the multilinear component."""
    return _space(algebra, degrees, central=False, bound=bound)


def multilinear_central_space(algebra, degrees, bound=DEFAULT_DEGREE_BOUND) -> Subspace:
    """Polynomials whose every admissible value is central."""
    return _space(algebra, degrees, central=True, bound=bound)


# -- generator sets ----------------------------------------------------------------------


class GeneratorSet:
    """A named family of polynomials with identity/central bookkeeping.

    For mode "centrals" the set is partitioned: s1 generates the graded
    identities as a T-space (padded shapes), s2 holds the proper central
    generators.  extras are polynomials that belong to the story but not to
    the basis (checked for membership, and optionally as consequences).
    """

    def __init__(self, name, mode, group, order, s1=(), s2=(), extras=(),
                 assumptions=(), fast_source=None):
        if mode not in ("identities", "centrals"):
            raise ValueError("mode must be 'identities' or 'centrals'")
        self.name = name
        self.mode = mode
        self.group = group
        self.order = order
        self.s1 = list(s1)
        self.s2 = list(s2)
        self.extras = list(extras)
        self.assumptions = list(assumptions)
        self.fast_source = fast_source
        self._multilinear = None

    @property
    def members(self):
        return self.s1 + self.s2

    def multilinear_members(self):
        """Members, fully polarized, with the (s1, s2) split preserved."""
        if self._multilinear is None:
            m1, m2 = [], []
            for f in self.s1:
                m1.extend(multilinearize(f))
            for f in self.s2:
                m2.extend(multilinearize(f))
            self._multilinear = (m1, m2)
        return self._multilinear

    def __repr__(self):
        return "GeneratorSet(%s, %s, |s1|=%d, |s2|=%d)" % (
            self.name, self.mode, len(self.s1), len(self.s2))


# -- consequence instances ------------------------------------------------------------------


def _block_assignments(template_letters, pg, tideal, group):
    """Assignments of target letters to a template's variables.

    Yields (blocks_by_letter, prefix, suffix): blocks are ordered tuples of
    target letters with matching product degree; a block may be empty only for
    identity-degree template variables; for T-ideal instances the leftovers
    split into an ordered prefix and suffix, for T-space instances there are
    no leftovers.
    """
    identity = group.identity
    targets = pg.letters

    def rec(j, remaining, blocks):
        if j == len(template_letters):
            if tideal:
                for perm in itertools.permutations(remaining):
                    for cut in range(len(perm) + 1):
                        yield blocks, perm[:cut], perm[cut:]
            elif not remaining:
                yield blocks, (), ()
            return
        dj = template_letters[j][1]
        if dj == identity:
            yield from rec(j + 1, remaining, blocks + [()])
        for size in range(1, len(remaining) + 1):
            for combo in itertools.permutations(remaining, size):
                if group.product([d for _, d in combo]) == dj:
                    left = tuple(x for x in remaining if x not in combo)
                    yield from rec(j + 1, left, blocks + [combo])

    yield from rec(0, targets, [])


def _template_instances(template: FreePoly, pg: MultidegreeBasis, tideal: bool):
    """All substitution instances of one multilinear template at a multidegree."""
    letters_t = template.letters()
    group = pg.group
    needed = sum(1 for _, d in letters_t if d != group.identity)
    if needed > len(pg.letters):
        return
    for blocks, prefix, suffix in _block_assignments(letters_t, pg, tideal, group):
        by_letter = dict(zip(letters_t, blocks))
        vec = [Cyclo.zero()] * pg.ncols
        nonzero = False
        for mono, c in template.terms.items():
            seq = list(prefix)
            for lt in mono:
                seq.extend(by_letter[lt])
            seq.extend(suffix)
            k = pg.index[tuple(seq)]
            vec[k] = vec[k] + c
            nonzero = True
        if nonzero and any(not x.is_zero() for x in vec):
            yield vec, (template, blocks, prefix, suffix)


def _generic_instances(polys, pg, tideal):
    # templates whose variable count and degree multiset match the target give
    # the direct relabelings; try those first
    def rank(p):
        lts = p.letters()
        exact = (len(lts) == len(pg.letters) and
                 sorted(d for _, d in lts) == sorted(pg.degrees))
        return (0 if exact else 1, len(lts))

    for template in sorted(polys, key=rank):
        yield from _template_instances(template, pg, tideal)


def tideal_consequences(generators, degrees, group=None, bound=DEFAULT_DEGREE_BOUND) -> Subspace:
    """Span at one multidegree of all T-ideal substitution instances.

    generators: a GeneratorSet (members used) or list of polynomials; non-
    multilinear members are polarized first.
    """
    return _consequence_space(generators, degrees, group, tideal=True, bound=bound)


def tspace_consequences(generators, degrees, group=None, bound=DEFAULT_DEGREE_BOUND) -> Subspace:
    """Span of substitution instances only (no outer multiplication)."""
    return _consequence_space(generators, degrees, group, tideal=False, bound=bound)


def _as_poly_list(generators):
    if isinstance(generators, GeneratorSet):
        m1, m2 = generators.multilinear_members()
        return m1 + m2
    out = []
    for p in generators:
        out.extend(multilinearize(p))
    return out


def _consequence_space(generators, degrees, group, tideal, bound):
    if isinstance(generators, GeneratorSet):
        group = generators.group
    if group is None:
        raise ValueError("group required when passing a raw polynomial list")
    pg = MultidegreeBasis(group, degrees)
    if len(pg.letters) > bound:
        raise ResourceRefusal("multidegree of length %d exceeds bound %d" % (
            len(pg.letters), bound))
    sub = Subspace(pg)
    if (isinstance(generators, GeneratorSet) and generators.fast_source is not None
            and getattr(generators.fast_source, "exact", False)):
        for stage in generators.fast_source.stages(pg):
            for vec in stage:
                sub.echelon.add(vec)
        return sub
    for vec, _ in _generic_instances(_as_poly_list(generators), pg, tideal):
        sub.echelon.add(vec)
    return sub


# -- regular families -------------------------------------------------------------------------


class _RegularSource:
    """Exact fast instance streams for the regular-grading families.

    The T-ideal instances of the commutation binomials at a multidegree are
    precisely the block relations u(B1 B2 - beta(d1,d2) B2 B1)v over all ways
    of cutting each monomial into four (possibly empty) consecutive parts with
    B1, B2 nonempty; the central family adds every full monomial whose product
    degree lies in the radical.
    """

    exact = True  # the streamed instances span exactly the generic span

    def __init__(self, beta: Bicharacter, mode: str):
        self.beta = beta
        self.mode = mode
        self.radical = set(beta.radical())

    def instances(self, pg: MultidegreeBasis):
        group = self.beta.group
        n = len(pg.letters)
        if self.mode == "centrals":
            total = group.product(pg.degrees)
            if total in self.radical:
                for k, mono in enumerate(pg.monomials):
                    vec = [Cyclo.zero()] * pg.ncols
                    vec[k] = Cyclo.one()
                    yield vec
        for mono in pg.monomials:
            for a in range(0, n):
                for b in range(a + 1, n + 1):
                    for c in range(b + 1, n + 1):
                        b1, b2 = mono[a:b], mono[b:c]
                        d1 = group.product([d for _, d in b1])
                        d2 = group.product([d for _, d in b2])
                        swapped = mono[:a] + b2 + b1 + mono[c:]
                        lam = self.beta.eval(d1, d2)
                        vec = [Cyclo.zero()] * pg.ncols
                        vec[pg.index[mono]] = Cyclo.one()
                        k2 = pg.index[swapped]
                        vec[k2] = vec[k2] - lam
                        if any(not x.is_zero() for x in vec):
                            yield vec

    def stages(self, pg):
        yield self.instances(pg)


def family_regular(beta: Bicharacter, mode: str) -> GeneratorSet:
    """The commutation-binomial identity family, or the central family
    (radical variables plus padded binomials), for a regular grading."""
    group = beta.group
    order = _lcm(beta.order, 2)
    elements = group.elements()
    values = {(g, h): beta.eval(g, h) for g in elements for h in elements}
    one = Cyclo.one()
    identities = []
    for g in elements:
        for h in elements:
            identities.append(FreePoly(group, order, {
                ((1, g), (2, h)): one,
                ((2, h), (1, g)): -values[(g, h)],
            }))
    if mode == "identities":
        return GeneratorSet("regular-identities", "identities", group, order,
                            s1=identities, fast_source=_RegularSource(beta, mode))
    if mode != "centrals":
        raise ValueError("mode must be 'identities' or 'centrals'")
    s2 = [monomial_poly(group, order, [(1, h)]) for h in beta.radical()]
    s1 = []
    for h1 in elements:
        for h2 in elements:
            for h3 in elements:
                lam = values[(h2, h3)]
                for h4 in elements:
                    s1.append(FreePoly(group, order, {
                        ((1, h1), (2, h2), (3, h3), (4, h4)): one,
                        ((1, h1), (3, h3), (2, h2), (4, h4)): -lam,
                    }))
    return GeneratorSet("regular-centrals", "centrals", group, order, s1=s1, s2=s2,
                        fast_source=_RegularSource(beta, mode))


# -- Pauli families -----------------------------------------------------------------------------


def _gamma_values(beta, degrees):
    """Reordering scalars for every permutation of the given degree tuple."""
    n = len(degrees)
    out = {}
    for perm in itertools.permutations(range(n)):
        out[perm] = reorder_scalar(perm, degrees, beta)
    return out


def _is_imaginary_unit(v: Cyclo) -> bool:
    return (not v.is_real()) and (v * v) == Cyclo.rational(-1)


def _kernel_members(group, order, beta, degrees, indices=None):
    """Literal (I)/(II)-shaped identities spanning the kernel at one tuple.

    With gamma_sigma the reordering scalars, the real solutions of
    sum mu_sigma gamma_sigma^(-1) = 0 are spanned by binomials with real
    ratios and trinomials with the exact real pair (p, q); every output is a
    literal family shape and together they span all linear identities at the
    tuple.
    """
    n = len(degrees)
    if indices is None:
        indices = list(range(1, n + 1))
    gammas = _gamma_values(beta, degrees)
    identity_perm = tuple(range(n))

    def mono(perm):
        return tuple((indices[k], tuple(degrees[k])) for k in perm)

    real_perms = [p for p, g in gammas.items() if g.is_real() and p != identity_perm]
    nonreal_perms = [p for p, g in gammas.items() if not g.is_real()]
    out = []
    for p in real_perms:
        terms = {mono(identity_perm): Cyclo.one(), mono(p): -gammas[p]}
        out.append(FreePoly(group, order, terms))
    if nonreal_perms:
        tau0 = nonreal_perms[0]
        g_tau = gammas[tau0]
        for p in nonreal_perms[1:]:
            g_sig = gammas[p]
            a, b = g_sig.inv(), g_tau.inv()
            det = a * b.conj() - b * a.conj()
            if det.is_zero():
                # gamma ratios real: binomial with the real ratio
                ratio = g_tau / g_sig
                assert ratio.is_real()
                out.append(FreePoly(group, order, {
                    mono(p): Cyclo.one(), mono(tau0): -ratio}))
            else:
                pp = (b - b.conj()) / det
                qq = (a.conj() - a) / det
                assert pp.is_real() and qq.is_real()
                assert (pp * a + qq * b + Cyclo.one()).is_zero()
                out.append(FreePoly(group, order, {
                    mono(identity_perm): Cyclo.one(), mono(p): pp, mono(tau0): qq}))
    return out


class _PauliSource:
    """Fast exact instance streams for the non-regular Pauli families.

    Stage one: block relations from the pair and triple commutation families,
    plus the kernel identities directly at the multidegree when its repeat
    pattern is within the applicable repeat bound.  Stage two: kernel
    identities instantiated on every ordered block partition whose merged
    degree tuple is admitted (the constructive content of the reduction
    lemmas).  Every vector yielded is a genuine instance of a family member.
    """

    exact = False  # stages are sound but may undershoot; callers fall back

    def __init__(self, beta, order, i_present, max_repeat):
        self.beta = beta
        self.order = order
        self.i_present = i_present
        self.max_repeat = max_repeat

    def _admitted(self, degs):
        counts = {}
        for d in degs:
            counts[d] = counts.get(d, 0) + 1
        return all(v <= self.max_repeat for v in counts.values())

    def _pair_relations(self, pg):
        group = self.beta.group
        n = len(pg.letters)
        minus_one = Cyclo.rational(-1)
        for mono in pg.monomials:
            base = pg.index[mono]
            for a in range(0, n):
                for b in range(a + 1, n + 1):
                    for c in range(b + 1, n + 1):
                        b1, b2 = mono[a:b], mono[b:c]
                        d1 = group.product([d for _, d in b1])
                        d2 = group.product([d for _, d in b2])
                        val = self.beta.eval(d1, d2)
                        if val.is_real():
                            # pair family: u(B1 B2 - val B2 B1)v
                            swapped = mono[:a] + b2 + b1 + mono[c:]
                            vec = [Cyclo.zero()] * pg.ncols
                            vec[base] = Cyclo.one()
                            k2 = pg.index[swapped]
                            vec[k2] = vec[k2] - val
                            if any(not x.is_zero() for x in vec):
                                yield vec
            # triple family relations u(B1 B2 W + p B1 W B2 + q W B1 B2)v need
            # two same-degree blocks; enumerate cuts u|B1|W|B2|v
            for a in range(0, n):
                for b in range(a + 1, n + 1):
                    for c in range(b + 1, n + 1):
                        for d in range(c + 1, n + 1):
                            b1, w, b2 = mono[a:b], mono[b:c], mono[c:d]
                            d1 = group.product([x for _, x in b1])
                            d2 = group.product([x for _, x in b2])
                            if d1 != d2:
                                continue
                            h = group.product([x for _, x in w])
                            val = self.beta.eval(d1, h)
                            if val.is_real():
                                continue
                            p = -(val + val.conj())
                            q = val * val.conj()
                            vec = [Cyclo.zero()] * pg.ncols
                            m_mid = pg.index[mono]
                            m_front = pg.index[mono[:a] + b1 + b2 + w + mono[d:]]
                            m_back = pg.index[mono[:a] + w + b1 + b2 + mono[d:]]
                            # instance: front + p*mid + q*back = 0 (scaled so the
                            # current monomial appears); emit the raw instance
                            vec[m_front] = vec[m_front] + Cyclo.one()
                            vec[m_mid] = vec[m_mid] + p
                            vec[m_back] = vec[m_back] + q
                            if any(not x.is_zero() for x in vec):
                                yield vec
            if self.i_present:
                # swap family u(B1 W B2 - B2 W B1)v for same-degree blocks
                for a in range(0, n):
                    for b in range(a + 1, n + 1):
                        for c in range(b, n + 1):
                            for d in range(c + 1, n + 1):
                                b1, w, b2 = mono[a:b], mono[b:c], mono[c:d]
                                d1 = group.product([x for _, x in b1])
                                d2 = group.product([x for _, x in b2])
                                if d1 != d2:
                                    continue
                                swapped = mono[:a] + b2 + w + b1 + mono[d:]
                                vec = [Cyclo.zero()] * pg.ncols
                                vec[pg.index[mono]] = Cyclo.one()
                                k2 = pg.index[swapped]
                                vec[k2] = vec[k2] - Cyclo.one()
                                if any(not x.is_zero() for x in vec):
                                    yield vec

    def _direct_kernel(self, pg):
        if not self._admitted(pg.degrees):
            return
        for poly in _kernel_members(self.beta.group, self.order, self.beta,
                                    list(pg.degrees)):
            try:
                yield pg.to_vector(poly.rename(
                    index_map=lambda i: i))
            except ValueError:
                continue

    def _partition_kernels(self, pg):
        """Kernel identities on merged blocks: for each ordered partition of
        the target letters into prefix, k blocks and suffix with the merged
        degree tuple admitted, the block-level kernel identities instantiate
        into this multidegree."""
        group = self.beta.group
        targets = pg.letters
        n = len(targets)
        for k in range(2, n):
            for assignment in _ordered_partitions(targets, k):
                blocks, prefix, suffix = assignment
                degs = [group.product([d for _, d in blk]) for blk in blocks]
                if not self._admitted(degs):
                    continue
                gammas = _gamma_values(self.beta, degs)
                identity_perm = tuple(range(k))
                kernel = _kernel_perm_vectors(gammas, identity_perm)
                for combo in kernel:
                    vec = [Cyclo.zero()] * pg.ncols
                    ok = True
                    for perm, coeff in combo:
                        seq = list(prefix)
                        for t in perm:
                            seq.extend(blocks[t])
                        seq.extend(suffix)
                        idx = pg.index[tuple(seq)]
                        vec[idx] = vec[idx] + coeff
                    if any(not x.is_zero() for x in vec):
                        yield vec

    def stages(self, pg):
        yield itertools.chain(self._direct_kernel(pg), self._pair_relations(pg))
        yield self._partition_kernels(pg)


def _kernel_perm_vectors(gammas, identity_perm):
    """Sparse kernel combinations over permutations, as in _kernel_members."""
    real_perms = [p for p, g in gammas.items() if g.is_real() and p != identity_perm]
    nonreal_perms = [p for p, g in gammas.items() if not g.is_real()]
    out = []
    one = Cyclo.one()
    for p in real_perms:
        out.append([(identity_perm, one), (p, -gammas[p])])
    if nonreal_perms:
        tau0 = nonreal_perms[0]
        g_tau = gammas[tau0]
        for p in nonreal_perms[1:]:
            g_sig = gammas[p]
            a, b = g_sig.inv(), g_tau.inv()
            det = a * b.conj() - b * a.conj()
            if det.is_zero():
                out.append([(p, one), (tau0, -(g_tau / g_sig))])
            else:
                pp = (b - b.conj()) / det
                qq = (a.conj() - a) / det
                out.append([(identity_perm, one), (p, pp), (tau0, qq)])
    return out


def _ordered_partitions(targets, k):
    """Ordered partitions of the target letters into prefix, k nonempty
    ordered blocks, and suffix."""

    def rec(j, remaining, blocks):
        if j == k:
            for perm in itertools.permutations(remaining):
                for cut in range(len(perm) + 1):
                    yield blocks, perm[:cut], perm[cut:]
            return
        for size in range(1, len(remaining) - (k - j - 1) + 1):
            for combo in itertools.permutations(remaining, size):
                left = tuple(x for x in remaining if x not in combo)
                yield from rec(j + 1, left, blocks + [combo])

    yield from rec(0, tuple(targets), [])


def family_pauli(algebra: GradedAlgebra, max_degree: int) -> GeneratorSet:
    """The identity basis families for a non-regular Pauli-type division
    grading, emitted up to max_degree.

    Pair binomials at real commutation values, trinomials with the exact real
    quadratic coefficients at nonreal values, the degree-three swap family and
    the degree-seven alternating family when the imaginary unit occurs as a
    commutation value, and the general reordering identities at degree tuples
    obeying the applicable repeat bound (pairwise distinct when no commutation
    value is the imaginary unit; at most three repeats otherwise).
    """
    real_beta, _ = detect_regular(algebra)
    if real_beta is not None:
        raise PreconditionError(
            "the grading is regular over the reals; use family_regular")
    beta, j_vec = detect_complex_bicharacter(algebra)
    if beta is None:
        raise PreconditionError("no complex commutation structure: %r" % (j_vec,))
    group = beta.group
    order = beta.order
    elements = group.elements()
    pair_values = {(g, h): beta.eval(g, h) for g in elements for h in elements}
    i_present = any(_is_imaginary_unit(v) for v in pair_values.values())
    s1 = []
    extras = []
    for (g, h), val in sorted(pair_values.items()):
        x1g = monomial_poly(group, order, [(1, g)])
        x2h = monomial_poly(group, order, [(2, h)])
        if val.is_real():
            s1.append(x1g * x2h - (x2h * x1g).scale(val))
        else:
            p = -(val + val.conj())
            q = val * val.conj()
            x1 = monomial_poly(group, order, [(1, g)])
            x2 = monomial_poly(group, order, [(2, g)])
            x3 = monomial_poly(group, order, [(3, h)])
            s1.append(x1 * x2 * x3 + (x1 * x3 * x2).scale(p) + (x3 * x1 * x2).scale(q))
        # the swap identity x1g x2h x3g - x3g x2h x1g
        x1 = monomial_poly(group, order, [(1, g)])
        x2 = monomial_poly(group, order, [(2, h)])
        x3 = monomial_poly(group, order, [(3, g)])
        swap = x1 * x2 * x3 - x3 * x2 * x1
        if i_present:
            s1.append(swap)
        else:
            extras.append(swap)
    if i_present:
        # degree-seven alternating family at triples with value i
        i_val = Cyclo.zeta(order, order // 4)
        for g in elements:
            partners = [h for h in elements if pair_values[(g, h)] == i_val]
            for h1, h2, h3 in itertools.product(partners, repeat=3):
                lts = {1: (1, g), 2: (2, h1), 3: (3, g), 4: (4, h2),
                       5: (5, g), 6: (6, h3), 7: (7, g)}
                m1 = monomial_poly(group, order, [lts[k] for k in (1, 2, 3, 4, 5, 6, 7)])
                m2 = monomial_poly(group, order, [lts[k] for k in (1, 3, 5, 7, 2, 4, 6)])
                s1.append(m1 + m2)
    max_repeat = 3 if i_present else 1
    for n in range(2, max_degree + 1):
        for combo in itertools.combinations_with_replacement(sorted(elements), n):
            counts = {}
            for d in combo:
                counts[d] = counts.get(d, 0) + 1
            if any(v > max_repeat for v in counts.values()):
                continue
            s1.extend(_kernel_members(group, order, beta, list(combo)))
    name = "pauli-families(max_degree=%d)" % max_degree
    assumptions = ["repeat bound %d per group element (imaginary commutation "
                   "value %s)" % (max_repeat, "present" if i_present else "absent")]
    return GeneratorSet(name, "identities", group, order, s1=s1, extras=extras,
                        assumptions=assumptions,
                        fast_source=_PauliSource(beta, order, i_present, max_repeat))


# -- transfer and lifting -------------------------------------------------------------------


def _validate_minimal_center(r_algebra, beta):
    """Check Z(R) = sum of the radical components (the transfer hypothesis)."""
    rad = set(beta.radical())
    z = center(r_algebra)
    central_degrees = {}
    for h in z:
        central_degrees[h.degree] = central_degrees.get(h.degree, 0) + 1
    expected = {g: len(r_algebra.component(g)) for g in rad}
    if central_degrees != expected:
        raise PreconditionError(
            "the regular factor does not have minimal center: Z(R) spans "
            "degrees %s but the radical components are %s" % (
                sorted(central_degrees), sorted(expected)))


def transfer_basis(genset: GeneratorSet, r_algebra: GradedAlgebra) -> GeneratorSet:
    """Transport a basis for A along tensoring with a regular R.

    Identities: all twisted relabelings of the members over tuples from the
    regular group.  Centrals: the identity-generating part over all tuples,
    the proper part only over tuples whose product lies in the radical; this
    needs R to have minimal center, which is validated (and refused
    otherwise rather than guessed).
    """
    beta, witness = detect_regular(r_algebra)
    if beta is None:
        raise PreconditionError("transfer needs a regular factor: %r" % witness)
    h_group = beta.group
    elements = h_group.elements()
    m1, m2 = genset.multilinear_members()
    if genset.mode == "centrals":
        if not genset.s1 or not genset.s2:
            raise PreconditionError(
                "central transfer needs the (s1, s2) partition of the basis")
        _validate_minimal_center(r_algebra, beta)
        radical = set(beta.radical())
    out_s1, out_s2 = [], []
    for f in m1:
        k = len(f.letters())
        for h in itertools.product(elements, repeat=k):
            out_s1.append(transfer_phi(f, list(h), beta))
    for f in m2:
        k = len(f.letters())
        for h in itertools.product(elements, repeat=k):
            if h_group.product(h) in radical:
                out_s2.append(transfer_phi(f, list(h), beta))
    group = genset.group.direct_product(h_group)
    order = _lcm(genset.order, beta.order)
    name = "%s(x)%s" % (genset.name, r_algebra.name)
    return GeneratorSet(name, genset.mode, group, order, s1=out_s1, s2=out_s2,
                        assumptions=list(genset.assumptions))


def lift_basis(algebra: GradedAlgebra, g, quotient_genset: GeneratorSet,
               name=None) -> GeneratorSet:
    """Lift a basis through the quotient by a central invertible homogeneous
    element of degree g: all consistent preimage relabelings of each member.

    The full preimage set of the quotient construction is infinite; the
    consistent relabelings are the finite part that generates, which is what
    the section homomorphisms in the construction use.
    """
    algebra.group.check(g)
    central_ok = False
    for h in center(algebra):
        if h.degree == g and invert(algebra, h.coords) is not None:
            central_ok = True
            break
    if not central_ok:
        raise PreconditionError(
            "no invertible central homogeneous element of degree %s"
            % algebra.group.element_to_word(g))
    quotient, project = quotient_by(algebra.group, g)
    if quotient.orders != quotient_genset.group.orders:
        raise PreconditionError(
            "generator set lives on %r but the quotient is %r" % (
                quotient_genset.group, quotient))
    fibers = {}
    for x in algebra.group.elements():
        fibers.setdefault(project(x), []).append(x)

    def lifts(polys):
        out = []
        for f in polys:
            for lin in multilinearize(f):
                letters = lin.letters()
                pools = [fibers[d] for _, d in letters]
                for choice in itertools.product(*pools):
                    mapping = {lt: choice[k] for k, lt in enumerate(letters)}
                    out.append(lift_poly(lin, algebra.group, mapping))
        seen, unique = set(), []
        for f in out:
            if f not in seen:
                seen.add(f)
                unique.append(f)
        return unique

    out = GeneratorSet(name or ("lift(%s)" % quotient_genset.name),
                       quotient_genset.mode, algebra.group,
                       _lcm(quotient_genset.order, algebra.order),
                       s1=lifts(quotient_genset.s1), s2=lifts(quotient_genset.s2),
                       assumptions=list(quotient_genset.assumptions))
    return out


# -- verification ------------------------------------------------------------------------------


class VerificationRecord:
    def __init__(self, degrees_words, orbit, dim_target, dim_consequence, equal,
                 witness=None):
        self.degrees = degrees_words
        self.orbit = orbit
        self.dim_target = dim_target
        self.dim_consequence = dim_consequence
        self.equal = equal
        self.witness = witness

    def as_dict(self):
        return {
            "degrees": list(self.degrees),
            "orbit": self.orbit,
            "dim_target": self.dim_target,
            "dim_consequence": self.dim_consequence,
            "equal": self.equal,
            "witness": self.witness,
        }


class VerificationReport:
    def __init__(self, algebra_name, genset_name, mode, max_degree, membership,
                 records, assumptions, elapsed):
        self.algebra = algebra_name
        self.genset = genset_name
        self.mode = mode
        self.max_degree = max_degree
        self.membership = membership
        self.records = records
        self.assumptions = assumptions
        self.elapsed = elapsed

    @property
    def ok(self):
        return (all(entry["ok"] for entry in self.membership)
                and all(r.equal for r in self.records))

    def as_dict(self):
        return {
            "format": "gradedpi-report",
            "version": 1,
            "algebra": self.algebra,
            "generator_set": self.genset,
            "mode": self.mode,
            "max_degree": self.max_degree,
            "ok": self.ok,
            "elapsed_seconds": round(self.elapsed, 3),
            "assumptions": list(self.assumptions),
            "membership": self.membership,
            "records": [r.as_dict() for r in self.records],
        }

    def to_json(self):
        return json.dumps(self.as_dict(), indent=2, sort_keys=False)

    def to_tsv(self):
        lines = ["degrees\torbit\tdim_target\tdim_consequence\tequal\twitness"]
        for r in self.records:
            lines.append("%s\t%d\t%d\t%d\t%s\t%s" % (
                ".".join(r.degrees) if r.degrees else "e", r.orbit, r.dim_target,
                r.dim_consequence, "yes" if r.equal else "NO",
                r.witness or ""))
        return "\n".join(lines) + "\n"

    def summary(self):
        bad = [r for r in self.records if not r.equal]
        mem_bad = [m for m in self.membership if not m["ok"]]
        return ("%s vs %s [%s, degree <= %d]: %s (%d orbit records, %d membership "
                "checks, %.1fs)" % (
                    self.algebra, self.genset, self.mode, self.max_degree,
                    "PASS" if self.ok else "FAIL (%d bad records, %d bad members)" % (
                        len(bad), len(mem_bad)),
                    len(self.records), len(self.membership), self.elapsed))


def _orbit_size(degrees):
    counts = {}
    for d in degrees:
        counts[d] = counts.get(d, 0) + 1
    total = _factorial(len(degrees))
    for v in counts.values():
        total //= _factorial(v)
    return total


def _membership_entries(algebra, genset):
    out = []
    polys = [("s1", f) for f in genset.s1] + [("s2", f) for f in genset.s2] + \
            [("extra", f) for f in genset.extras]
    for part, f in polys:
        if genset.mode == "identities" or part == "extra":
            ok, witness = is_identity(algebra, f)
            verdict = "identity" if ok else "not-an-identity"
            wtxt = None if ok else _witness_text(witness)
        else:
            verdict, w = is_central(algebra, f)
            ok = verdict in ("identity", "proper-central")
            wtxt = None if ok else _witness_text(w[0]) + (" vs %s" % w[1])
        out.append({"part": part, "poly": str(f), "verdict": verdict,
                    "ok": ok, "witness": wtxt})
    return out


def _witness_text(witness):
    return "; ".join("x%d -> %s" % (lt[0], val)
                     for lt, val in sorted(witness.items()))


def _instance_stages(genset, pg, mode):
    """Iterator of instance-vector stages; later stages are only consumed when
    earlier ones do not already close the span.  The generic template
    enumeration always comes last as the exhaustive fallback (it is skipped
    entirely for fast sources that are exact)."""
    exact = False
    if genset.fast_source is not None:
        yield from genset.fast_source.stages(pg)
        exact = getattr(genset.fast_source, "exact", False)
    if not exact:
        m1, m2 = genset.multilinear_members()
        yield (vec for vec, _ in _generic_instances(
            m1 + m2, pg, tideal=(mode == "identities")))


def _check_multidegree(algebra, genset, degrees, mode, bound):
    pg = MultidegreeBasis(algebra.group, degrees)
    if mode == "identities":
        target = multilinear_identity_space(algebra, degrees, bound)
    else:
        target = multilinear_central_space(algebra, degrees, bound)
    cons = Echelon(pg.ncols)
    guard = target.echelon.copy()
    conservativity_witness = None
    for stage in _instance_stages(genset, pg, mode):
        for vec in stage:
            if guard.add(vec):
                conservativity_witness = pg.from_vector(vec, genset.order)
                break
            cons.add(vec)
            if cons.dim == target.dim:
                break
        if conservativity_witness is not None or cons.dim == target.dim:
            break
    equal = cons.dim == target.dim and conservativity_witness is None
    witness = None
    if conservativity_witness is not None:
        witness = "instance outside the target space: %s" % conservativity_witness
    elif not equal:
        for v in target.basis():
            if not cons.contains(v):
                witness = "missing from consequences: %s" % pg.from_vector(
                    v, genset.order)
                break
    return VerificationRecord(pg.words(), _orbit_size(degrees), target.dim,
                              cons.dim, equal, witness)


def verify_basis(algebra: GradedAlgebra, genset: GeneratorSet, max_degree: int,
                 bound=DEFAULT_DEGREE_BOUND, jobs: int = 1,
                 progress=None) -> VerificationReport:
    """Membership of every member, then per-multidegree completeness.

    For every multidegree over the support of total degree <= max_degree the
    consequence span of the generator set is compared exactly with the
    identity (resp. central) space.  Work is done once per sorted orbit; the
    record carries the orbit size.
    """
    t0 = time.time()
    if max_degree > bound:
        raise ResourceRefusal(
            "max degree %d exceeds the dense-engine bound %d (component "
            "dimension %d); the large-multidegree path handles single "
            "multidegrees beyond it" % (max_degree, bound, _factorial(max_degree)))
    membership = _membership_entries(algebra, genset)
    support = sorted(algebra.support)
    reps = []
    for n in range(1, max_degree + 1):
        reps.extend(itertools.combinations_with_replacement(support, n))
    records = []
    if jobs > 1:
        import multiprocessing

        with multiprocessing.get_context("fork").Pool(jobs) as pool:
            results = pool.starmap(
                _check_multidegree,
                [(algebra, genset, degrees, genset.mode, bound) for degrees in reps])
        records.extend(results)
    else:
        for degrees in reps:
            records.append(_check_multidegree(algebra, genset, degrees,
                                              genset.mode, bound))
            if progress is not None:
                progress(records[-1])
    assumptions = list(genset.assumptions)
    if set(algebra.support) != set(algebra.group.elements()):
        assumptions.append("off-support degrees are trivially complete "
                           "(variables there are themselves identities)")
    return VerificationReport(algebra.name, genset.name, genset.mode, max_degree,
                              membership, records, assumptions, time.time() - t0)


# -- rewriting reducer for Pauli-type gradings ------------------------------------------------


class _RewriteContext:
    def __init__(self, group, order, beta):
        self.group = group
        self.order = order
        self.beta = beta

    def member_pair(self, g, h, val):
        x1 = monomial_poly(self.group, self.order, [(1, g)])
        x2 = monomial_poly(self.group, self.order, [(2, h)])
        return x1 * x2 - (x2 * x1).scale(val)

    def member_triple(self, g, h, p, q):
        x1 = monomial_poly(self.group, self.order, [(1, g)])
        x2 = monomial_poly(self.group, self.order, [(2, g)])
        x3 = monomial_poly(self.group, self.order, [(3, h)])
        return x1 * x2 * x3 + (x1 * x3 * x2).scale(p) + (x3 * x1 * x2).scale(q)

    def member_swap(self, g, h):
        x1 = monomial_poly(self.group, self.order, [(1, g)])
        x2 = monomial_poly(self.group, self.order, [(2, h)])
        x3 = monomial_poly(self.group, self.order, [(3, g)])
        return x1 * x2 * x3 - x3 * x2 * x1


def instance_poly(member: FreePoly, prefix, blocks, suffix, group, order) -> FreePoly:
    """Substitution instance of a member: blocks align with its sorted letters."""
    letters = member.letters()
    by_letter = dict(zip(letters, blocks))
    terms = {}
    for mono, c in member.terms.items():
        seq = list(prefix)
        for lt in mono:
            seq.extend(by_letter[lt])
        seq.extend(suffix)
        key = tuple(seq)
        prev = terms.get(key)
        terms[key] = c if prev is None else prev + c
    return FreePoly(group, order, terms)


def _rewrite_term(ctx: _RewriteContext, coeff, mono, alpha, beta_lt, i_present):
    """One elementary rewrite moving alpha and beta_lt together.

    Returns (new_terms, uses): the exact claim is
    coeff*mono - new_terms == sum of the use instances.
    """
    group, beta = ctx.group, ctx.beta
    g = alpha[1]
    pa = mono.index(alpha)
    pb = mono.index(beta_lt)
    lo, hi = min(pa, pb), max(pa, pb)
    first, second = mono[lo], mono[hi]
    between = mono[lo + 1:hi]
    if not between:
        if (first, second) == (alpha, beta_lt):
            return [(coeff, mono)], []
        member = ctx.member_pair(g, g, beta.eval(g, g))
        assert beta.eval(g, g).is_one(), "same-component elements must commute"
        swapped = mono[:lo] + (alpha, beta_lt) + mono[hi + 1:]
        use = (member, mono[:lo], ((beta_lt,), (alpha,)), mono[hi + 1:], coeff)
        return [(coeff, swapped)], [use]
    h = group.product([d for _, d in between])
    val = beta.eval(g, h)
    if val.is_real():
        member = ctx.member_pair(g, h, val)
        moved = mono[:lo] + between + (first, second) + mono[hi + 1:]
        use = (member, mono[:lo], ((first,), between), (second,) + mono[hi + 1:], coeff)
        return [(coeff * val, moved)], [use]
    if not (val * val) == Cyclo.rational(-1):
        p = -(val + val.conj())
        q = val * val.conj()
        assert not p.is_zero()
        member = ctx.member_triple(g, h, p, q)
        front = mono[:lo] + (first, second) + between + mono[hi + 1:]
        back = mono[:lo] + between + (first, second) + mono[hi + 1:]
        pinv = p.inv()
        use = (member, mono[:lo], ((first,), (second,), between), mono[hi + 1:],
               coeff * pinv)
        return [(-coeff * pinv, front), (-coeff * q * pinv, back)], [use]
    # imaginary commutation value: detour through other same-degree letters
    if not i_present or len([t for t, lt in enumerate(mono) if lt[1] == g]) < 4:
        raise PreconditionError(
            "cannot merge across an imaginary commutation value with fewer "
            "than four occurrences of the degree")
    gpos = [t for t, lt in enumerate(mono) if lt[1] == g]
    slots = None
    for j in range(len(gpos) - 1):
        seg = mono[gpos[j] + 1: gpos[j + 1]]
        segdeg = group.product([d for _, d in seg])
        v = beta.eval(g, segdeg)
        if not (v * v) == Cyclo.rational(-1):
            slots = (gpos[j], gpos[j + 1])
            break
    if slots is None:
        slots = (gpos[0], gpos[2])
        seg = mono[slots[0] + 1: slots[1]]
        segdeg = group.product([d for _, d in seg])
        assert beta.eval(g, segdeg).is_real(), "composite block must be real-valued"
    # bring alpha and beta_lt onto the slots with swap-family instances
    targets = {alpha, beta_lt}
    for s in slots:
        if mono[s] in targets:
            continue
        mover = alpha if alpha not in (mono[slots[0]], mono[slots[1]]) else beta_lt
        pm = mono.index(mover)
        s0, s1 = min(s, pm), max(s, pm)
        seg = mono[s0 + 1:s1]
        new = list(mono)
        new[s0], new[s1] = mono[s1], mono[s0]
        new = tuple(new)
        if seg:
            segdeg = group.product([d for _, d in seg])
            member = ctx.member_swap(g, segdeg)
            use = (member, mono[:s0], ((mono[s0],), seg, (mono[s1],)), mono[s1 + 1:],
                   coeff)
        else:
            member = ctx.member_pair(g, g, Cyclo.one())
            use = (member, mono[:s0], ((mono[s0],), (mono[s1],)), mono[s1 + 1:], coeff)
        return [(coeff, new)], [use]
    # alpha and beta already occupy the slots; their between-block is then
    # real-valued by slot choice, so an earlier branch must have applied
    raise AssertionError("unreachable: mergeable slot pair not merged")


def pauli_reduce(algebra: GradedAlgebra, poly: FreePoly):
    """Merge repeated-degree variables until the applicable repeat bound holds.

    Returns (reduced polynomial, certificate).  Every rewriting step is an
    exact T-ideal instance of an emitted family member, recorded so the whole
    chain replays as polynomial identities; membership in the graded
    identities is preserved in both directions.
    """
    if not poly.is_multilinear():
        raise PreconditionError("pauli_reduce needs a multilinear polynomial")
    beta, j_vec = detect_complex_bicharacter(algebra)
    if beta is None:
        raise PreconditionError("no complex commutation structure: %r" % (j_vec,))
    elements = beta.group.elements()
    i_present = any(_is_imaginary_unit(beta.eval(g, h))
                    for g in elements for h in elements)
    threshold = 4 if i_present else 2
    ctx = _RewriteContext(poly.group, _lcm(poly.order, beta.order), beta)
    current = FreePoly(poly.group, ctx.order, poly.terms)
    rounds = []
    while True:
        letters = current.letters()
        counts = {}
        for lt in letters:
            counts.setdefault(lt[1], []).append(lt)
        g = next((d for d in sorted(counts) if len(counts[d]) >= threshold), None)
        if g is None:
            break
        pair = sorted(counts[g])[-2:]
        alpha, beta_lt = pair[0], pair[1]
        new_letter = (alpha[0], beta.group.op(g, g))
        mono_records = []
        collapsed_terms = {}
        for mono, coeff in sorted(current.terms.items()):
            uses_all = []
            worklist = [(coeff, mono)]
            done_terms = {}
            guard = 0
            while worklist:
                guard += 1
                assert guard < 1000, "rewriting did not terminate"
                c, m = worklist.pop()
                pa, pb = m.index(alpha), m.index(beta_lt)
                if pb == pa + 1:
                    prev = done_terms.get(m)
                    done_terms[m] = c if prev is None else prev + c
                    continue
                new_terms, uses = _rewrite_term(ctx, c, m, alpha, beta_lt, i_present)
                uses_all.extend(uses)
                worklist.extend(new_terms)
            after = FreePoly(poly.group, ctx.order, done_terms)
            # exactness of this monomial's chain is replayable
            mono_records.append({
                "coeff": coeff, "before": mono, "after": after, "uses": uses_all})
            for m, c in after.terms.items():
                pa = m.index(alpha)
                assert m[pa + 1] == beta_lt
                newm = m[:pa] + (new_letter,) + m[pa + 2:]
                prev = collapsed_terms.get(newm)
                collapsed_terms[newm] = c if prev is None else prev + c
        result = FreePoly(poly.group, ctx.order, collapsed_terms)
        rounds.append({
            "degree": g, "alpha": alpha, "beta": beta_lt, "new": new_letter,
            "monomials": mono_records, "result": result,
        })
        current = result
    return current, rounds


def replay_certificate(original: FreePoly, reduced: FreePoly, rounds) -> bool:
    """Re-verify a reduction certificate as exact polynomial identities.

    For each recorded monomial, before - after must equal the recorded
    combination of family-member instances, and each round's collapsed result
    must assemble from the rewritten monomials; the final result must be the
    reduced polynomial.  Raises AssertionError on any mismatch.
    """
    group, order = original.group, original.order
    current = original
    for rnd in rounds:
        alpha, beta_lt, new_letter = rnd["alpha"], rnd["beta"], rnd["new"]
        total_before = FreePoly(group, order, {})
        collapsed = FreePoly(group, order, {})
        for rec in rnd["monomials"]:
            before = FreePoly(group, order, {rec["before"]: rec["coeff"]})
            total_before = total_before + before
            claimed = before - rec["after"]
            built = FreePoly(group, order, {})
            for member, prefix, blocks, suffix, coeff in rec["uses"]:
                built = built + instance_poly(member, prefix, blocks, suffix,
                                              group, order).scale(coeff)
            assert claimed == built, "certificate step does not replay"
            for m, c in rec["after"].terms.items():
                pa = m.index(alpha)
                assert m[pa + 1] == beta_lt
                newm = m[:pa] + (new_letter,) + m[pa + 2:]
                collapsed = collapsed + FreePoly(group, order, {newm: c})
        assert total_before == current, "round input does not match"
        assert collapsed == rnd["result"], "round result does not assemble"
        current = rnd["result"]
    assert current == reduced, "final result does not match"
    return True


# -- named generator sets --------------------------------------------------------------


def dv_basis(group, order=2) -> GeneratorSet:
    """Commutator at even degrees, reversal of a degree-three odd word."""
    if tuple(group.orders) != (2,):
        raise PreconditionError("this basis lives over a two-element group")
    e, a = (0,), (1,)
    x = lambda i, d: monomial_poly(group, order, [(i, d)])
    f1 = x(1, e) * x(2, e) - x(2, e) * x(1, e)
    f2 = x(1, a) * x(2, a) * x(3, a) - x(3, a) * x(2, a) * x(1, a)
    return GeneratorSet("dv-lemma", "identities", group, order, s1=[f1, f2])


def bp_basis(group, order=2) -> GeneratorSet:
    """Central generators for the elementary grading, multilinear form."""
    if tuple(group.orders) != (2,):
        raise PreconditionError("this basis lives over a two-element group")
    e, a = (0,), (1,)
    x = lambda i, d: monomial_poly(group, order, [(i, d)])
    s2 = [x(1, a) * x(2, a) + x(2, a) * x(1, a)]
    s1 = []
    for g in (e, a):
        for g2 in (e, a):
            comm = x(2, e) * x(3, e) - x(3, e) * x(2, e)
            s1.append(x(1, g) * comm * x(4, g2))
            triple = (x(2, a) * x(3, a) * x(4, a)) - (x(4, a) * x(3, a) * x(2, a))
            s1.append(x(1, g) * triple * x(5, g2))
    return GeneratorSet(
        "bp-centrals", "centrals", group, order, s1=s1, s2=s2,
        assumptions=[
            "the squared odd generator is used in its multilinear form",
            "a misprinted variable in the degree-five family is read as the "
            "variable introduced in the same polynomial",
            "the two padding degrees range independently (the single-letter "
            "display is the compact form, as in the padded commutator family "
            "for regular gradings)",
        ])


def s4_hall_basis() -> GeneratorSet:
    from .freealg import hall_poly, standard_poly
    from .groups import FiniteAbelianGroup

    group = FiniteAbelianGroup(())
    return GeneratorSet("s4-hall", "identities", group, 1,
                        s1=[standard_poly(4, group), hall_poly(group)])


def okhitin_basis() -> GeneratorSet:
    from .freealg import okhitin_central_poly, padded_standard_poly
    from .groups import FiniteAbelianGroup

    group = FiniteAbelianGroup(())
    return GeneratorSet("okhitin", "centrals", group, 1,
                        s1=[padded_standard_poly(4, group)],
                        s2=[okhitin_central_poly(group)])


# -- the flag-gated degree-seven Pauli check -------------------------------------------------


class _RatioUnionFind:
    """Union-find over monomials with exact scalar ratios to the class root.

    Joining m1 = c * m2 when both map to the same root with inconsistent
    ratios collapses the class to zero (the difference is in the span).
    """

    def __init__(self, n):
        self.parent = list(range(n))
        self.ratio = [Cyclo.one()] * n  # element = ratio * root
        self.zero = [False] * n

    def find(self, k):
        path = []
        while self.parent[k] != k:
            path.append(k)
            k = self.parent[k]
        acc = Cyclo.one()
        for node in reversed(path):
            acc = acc * self.ratio[node]
            self.parent[node] = k
            self.ratio[node] = acc
        return k

    def is_zero(self, k):
        return self.zero[self.find(k)]

    def set_zero(self, k):
        self.zero[self.find(k)] = True

    def join(self, a, b, c):
        """Impose a = c * b."""
        ra, rb = self.find(a), self.find(b)
        ca = self.ratio[a] if a != ra else Cyclo.one()
        cb = self.ratio[b] if b != rb else Cyclo.one()
        if ra == rb:
            if not (ca == c * cb):
                self.zero[ra] = True
            return
        # root_a = (c * cb / ca) root_b
        self.parent[ra] = rb
        self.ratio[ra] = c * cb / ca
        if self.zero[ra]:
            self.zero[rb] = True


def check_pauli_multidegree(algebra: GradedAlgebra, degrees) -> VerificationRecord:
    """Completeness of the reordering families at one (possibly large)
    multidegree of a Pauli-type grading, by exact quotient counting.

    The identity space is the real kernel of the reordering-scalar functional,
    of codimension 1 or 2.  The consequence span is built from two- and
    three-term instances (pair moves, swaps, triple relations, and the
    degree-seven alternating family); its codimension is tracked by a ratio
    union-find plus a small elimination, which avoids materializing the n!
    by n! linear algebra.
    """
    beta, _ = detect_complex_bicharacter(algebra)
    if beta is None:
        raise PreconditionError("not a Pauli-type grading")
    group = beta.group
    degrees = [group.check(tuple(d)) for d in degrees]
    n = len(degrees)
    letters = tuple((i + 1, degrees[i]) for i in range(n))
    monomials = [tuple(p) for p in itertools.permutations(letters)]
    index = {m: k for k, m in enumerate(monomials)}
    # reordering scalar of each monomial relative to the identity order
    pos_of = {lt: k for k, lt in enumerate(letters)}
    gamma = []
    for m in monomials:
        perm = tuple(pos_of[lt] for lt in m)
        gamma.append(reorder_scalar(perm, degrees, beta))
    # codimension of the identity space
    base = gamma[0].inv()
    codim = 1
    for gv in gamma:
        if not (gv.inv() / base).is_real():
            codim = 2
            break
    dim_id = len(monomials) - codim

    uf = _RatioUnionFind(len(monomials))
    i_val = Cyclo.zeta(beta.order, beta.order // 4)
    minus_one = Cyclo.rational(-1)

    def check_identity_relation(parts):
        total = Cyclo.zero()
        for k, c in parts:
            total = total + c * gamma[k].inv()
        assert total.is_zero(), "emitted relation is not an identity"

    triple_rows = []
    for m in monomials:
        base_idx = index[m]
        for a in range(n):
            for b in range(a + 1, n + 1):
                for c in range(b + 1, n + 1):
                    b1, b2 = m[a:b], m[b:c]
                    d1 = group.product([d for _, d in b1])
                    d2 = group.product([d for _, d in b2])
                    val = beta.eval(d1, d2)
                    if val.is_real():
                        other = index[m[:a] + b2 + b1 + m[c:]]
                        check_identity_relation([(base_idx, Cyclo.one()),
                                                 (other, -val)])
                        if other == base_idx:
                            if not val.is_one():
                                uf.set_zero(base_idx)
                        else:
                            uf.join(base_idx, other, val)
        # swap relations u(B1 W B2 - B2 W B1)v at same-degree single letters
        for a in range(n):
            for c in range(a + 1, n):
                if m[a][1] != m[c][1]:
                    continue
                new = list(m)
                new[a], new[c] = m[c], m[a]
                other = index[tuple(new)]
                check_identity_relation([(base_idx, Cyclo.one()), (other, minus_one)])
                uf.join(base_idx, other, Cyclo.one())
        # triple relations with same-degree single letters around a block
        for a in range(n):
            for c in range(a + 1, n):
                if m[a][1] != m[c][1] or c == a + 1:
                    continue
                w = m[a + 1:c]
                h = group.product([d for _, d in w])
                val = beta.eval(m[a][1], h)
                if val.is_real():
                    continue
                p = -(val + val.conj())
                q = val * val.conj()
                front = index[m[:a] + (m[a], m[c]) + w + m[c + 1:]]
                back = index[m[:a] + w + (m[a], m[c]) + m[c + 1:]]
                parts = [(front, Cyclo.one()), (base_idx, p), (back, q)]
                check_identity_relation(parts)
                triple_rows.append(parts)
    # degree-seven alternating family: monomials u x W1 x W2 x W3 x v with the
    # four x of one degree g and all three intervening blocks pairing to i
    for m in monomials:
        by_degree = {}
        for t, lt in enumerate(m):
            by_degree.setdefault(lt[1], []).append(t)
        for g, positions in by_degree.items():
            if len(positions) != 4:
                continue
            p1, p2, p3, p4 = positions
            blocks = [m[p1 + 1:p2], m[p2 + 1:p3], m[p3 + 1:p4]]
            if any(not blk for blk in blocks):
                continue
            vals = [beta.eval(g, group.product([d for _, d in blk]))
                    for blk in blocks]
            if all(v == i_val for v in vals):
                other = (m[:p1] + (m[p1], m[p2], m[p3], m[p4])
                         + blocks[0] + blocks[1] + blocks[2] + m[p4 + 1:])
                oidx = index[other]
                base_idx = index[m]
                check_identity_relation([(base_idx, Cyclo.one()),
                                         (oidx, Cyclo.one())])
                uf.join(base_idx, oidx, minus_one)
    seen_roots = {}
    for k in range(len(monomials)):
        r = uf.find(k)
        if not uf.zero[r]:
            seen_roots.setdefault(r, len(seen_roots))
    ech = Echelon(len(seen_roots))
    for parts in triple_rows:
        row = [Cyclo.zero()] * len(seen_roots)
        ok = True
        for k, c in parts:
            r = uf.find(k)
            if uf.zero[r]:
                continue
            col = seen_roots[r]
            row[col] = row[col] + c * uf.ratio[k] if k != r else row[col] + c
        if any(not x.is_zero() for x in row):
            ech.add(row)
    quotient_dim = len(seen_roots) - ech.dim
    dim_cons = len(monomials) - quotient_dim
    equal = quotient_dim == codim
    witness = None if equal else (
        "consequence span has codimension %d, identities have codimension %d" % (
            quotient_dim, codim))
    words = [group.element_to_word(d) for d in degrees]
    return VerificationRecord(words, _orbit_size(degrees), dim_id, dim_cons,
                              equal, witness)
