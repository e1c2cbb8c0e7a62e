"""Buchberger's algorithm for ideals and submodules of free modules.

Module elements ("vectors") are dicts mapping (component, monomial) to a
nonzero coefficient.  The module order is position-over-term: a term in a
lower component index beats any term in a higher one, with the ring's
monomial order breaking ties inside a component.  Syzygies are computed by
the tag construction: adjoin one fresh tag component per generator, compute a
Groebner basis, and read off the basis elements supported entirely on tags.

Computations over a quotient ring R = S/J always happen at the level of S
with the modulus adjoined (J-multiples of the unit vectors for modules);
results are projected back and stored as normal forms.
"""

from __future__ import annotations

from functools import cmp_to_key

from .rings import (
    Mono,
    Polynomial,
    Ring,
    RingError,
    mono_deg,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)

Term = tuple  # (component, monomial)
Vec = dict  # Term -> coefficient


class CappedComputationError(Exception):
    """A Groebner computation exceeded the configured total-degree cap."""

    def __init__(self, cap, partial=None):
        super().__init__(f"degree cap {cap} exceeded")
        self.cap = cap
        self.partial = partial


DEFAULT_DEGREE_CAP = 40


# ---------------------------------------------------------------------------
# vector primitives

def vec_from_poly(f: Polynomial, comp: int = 0) -> Vec:
    return {(comp, m): c for m, c in f.terms}


def vec_is_zero(v: Vec) -> bool:
    return not v


def vec_lt(v: Vec, okey):
    """(component, monomial, coeff) of the leading term under POT."""
    c = min(t[0] for t in v)
    best = None
    bk = None
    for (comp, mono), _ in v.items():
        if comp != c:
            continue
        k = okey(mono)
        if bk is None or k > bk:
            bk, best = k, mono
    return c, best, v[(c, best)]


def vec_scale(v: Vec, s: int, p: int) -> Vec:
    s %= p
    if s == 0:
        return {}
    return {t: (c * s) % p for t, c in v.items()}


def vec_monic(v: Vec, okey, p: int) -> Vec:
    if not v:
        return v
    _, _, lc = vec_lt(v, okey)
    return vec_scale(v, pow(lc, p - 2, p), p)


def vec_add(a: Vec, b: Vec, p: int) -> Vec:
    out = dict(a)
    for t, c in b.items():
        s = (out.get(t, 0) + c) % p
        if s:
            out[t] = s
        else:
            out.pop(t, None)
    return out


def vec_axpy(target: Vec, coeff: int, delta: Mono, src: Vec, p: int) -> None:
    """target -= coeff * x^delta * src, in place."""
    for (comp, mono), c in src.items():
        t = (comp, mono_mul(mono, delta))
        s = (target.get(t, 0) - coeff * c) % p
        if s:
            target[t] = s
        else:
            target.pop(t, None)


def vec_shift_components(v: Vec, offset: int) -> Vec:
    return {(c + offset, m): co for (c, m), co in v.items()}


def vec_single_component(v: Vec):
    comps = {c for c, _ in v}
    return next(iter(comps)) if len(comps) == 1 else None


def vec_restrict(v: Vec, lo: int, hi: int) -> Vec:
    """Components lo..hi-1, reindexed starting at 0."""
    return {(c - lo, m): co for (c, m), co in v.items() if lo <= c < hi}


def vec_poly_entries(v: Vec, ring: Ring, rank: int) -> list:
    """The vector as a list of ring elements (normal forms in quotients)."""
    buckets: list[dict] = [dict() for _ in range(rank)]
    for (c, m), co in v.items():
        buckets[c][m] = co
    return [ring.from_dict(b) for b in buckets]


def vec_from_polys(polys, ring=None) -> Vec:
    out: Vec = {}
    for comp, f in enumerate(polys):
        for m, c in f.terms:
            out[(comp, m)] = c
    return out


def vec_canonical_str(v: Vec, ring: Ring) -> str:
    items = sorted(v.items())
    return ";".join(f"{c},{'.'.join(map(str, m))},{co}" for (c, m), co in items)


# ---------------------------------------------------------------------------
# division / normal form

def _index_by_comp(basis) -> dict:
    idx: dict = {}
    for g in basis:
        c, m, _ = g["_lt"]
        idx.setdefault(c, []).append((m, g["v"]))
    return idx


def _compile(basis_vecs, okey, p):
    out = []
    for v in basis_vecs:
        v = vec_monic(v, okey, p)
        out.append({"v": v, "_lt": vec_lt(v, okey)})
    return out


def vec_normal_form(v: Vec, index: dict, okey, p: int) -> Vec:
    """Fully reduced normal form: no term divisible by any basis leading term."""
    work = dict(v)
    out: Vec = {}
    while work:
        c, m, coeff = vec_lt(work, okey)
        reducer = None
        for lm, g in index.get(c, ()):
            delta = mono_div(m, lm)
            if delta is not None:
                reducer = (delta, g)
                break
        if reducer is None:
            out[(c, m)] = coeff
            del work[(c, m)]
            continue
        delta, g = reducer
        vec_axpy(work, coeff, delta, g, p)
    return out


# ---------------------------------------------------------------------------
# Buchberger

def _lt_sort_key(okey):
    def cmp(a, b):
        (ca, ma), (cb, mb) = a, b
        if ca != cb:
            return -1 if ca < cb else 1
        ka, kb = okey(ma), okey(mb)
        if ka == kb:
            return 0
        return 1 if ka < kb else -1  # bigger monomial first

    return cmp_to_key(cmp)


def buchberger_vectors(gens, ring: Ring, degree_cap: int = DEFAULT_DEGREE_CAP):
    """Reduced monic Groebner basis of the submodule generated by gens.

    The ring is treated as free here; quotient semantics are the caller's
    business (adjoin modulus multiples first).
    """
    okey = ring.order.key
    p = ring.field.p
    basis: list[Vec] = []
    lts: list = []
    index: dict = {}

    def push(v: Vec):
        v = vec_monic(v, okey, p)
        basis.append(v)
        lt = vec_lt(v, okey)
        lts.append(lt)
        index.setdefault(lt[0], []).append((lt[1], v))
        return len(basis) - 1

    seen = set()
    for g in gens:
        g = {t: c % p for t, c in g.items() if c % p}
        if not g:
            continue
        key = tuple(sorted(g.items()))
        if key in seen:
            continue
        seen.add(key)
        push(g)

    pending: set[tuple[int, int]] = set()

    def add_pairs(j):
        cj, mj, _ = lts[j]
        for i in range(j):
            if lts[i][0] == cj:
                pending.add((i, j))

    for j in range(len(basis)):
        add_pairs(j)

    def pair_key(pair):
        i, j = pair
        lcm = mono_lcm(lts[i][1], lts[j][1])
        return (mono_deg(lcm), okey(lcm), lts[i][0], i, j)

    while pending:
        i, j = min(pending, key=pair_key)
        pending.discard((i, j))
        ci, mi, _ = lts[i]
        _, mj, _ = lts[j]
        lcm = mono_lcm(mi, mj)
        if mono_deg(lcm) > degree_cap:
            raise CappedComputationError(degree_cap, partial=basis)
        # product criterion: only sound when both elements live in one component
        if (
            vec_single_component(basis[i]) is not None
            and vec_single_component(basis[j]) is not None
            and mono_mul(mi, mj) == lcm
        ):
            continue
        # chain criterion
        skip = False
        for k in range(len(basis)):
            if k in (i, j) or lts[k][0] != ci:
                continue
            if not mono_divides(lts[k][1], lcm):
                continue
            pik = (min(i, k), max(i, k))
            pjk = (min(j, k), max(j, k))
            if pik not in pending and pjk not in pending:
                skip = True
                break
        if skip:
            continue
        s: Vec = {}
        vec_axpy(s, p - 1, mono_div(lcm, mi), basis[i], p)  # += x^(lcm-mi) g_i
        vec_axpy(s, 1, mono_div(lcm, mj), basis[j], p)  # -= x^(lcm-mj) g_j
        h = vec_normal_form(s, index, okey, p)
        if h:
            add_pairs(push(h))

    return _reduce_basis(basis, ring)


def _reduce_basis(basis, ring: Ring):
    """Interreduce to the unique reduced monic basis, canonically sorted."""
    okey = ring.order.key
    p = ring.field.p
    work = [vec_monic(dict(v), okey, p) for v in basis if v]
    changed = True
    while changed:
        changed = False
        for i in range(len(work)):
            if not work[i]:
                continue
            others = [w for k, w in enumerate(work) if k != i and w]
            idx = _index_by_comp(_compile(others, okey, p))
            h = vec_normal_form(work[i], idx, okey, p)
            if h != work[i]:
                changed = True
            work[i] = vec_monic(h, okey, p)
        work = [w for w in work if w]
    work.sort(key=lambda v: _lt_sort_key(okey)(vec_lt(v, okey)[:2]))
    return work


def is_groebner_basis(basis, ring: Ring) -> bool:
    """Post-hoc certificate: every S-pair reduces to zero (no criteria used)."""
    okey = ring.order.key
    p = ring.field.p
    compiled = _compile(basis, okey, p)
    idx = _index_by_comp(compiled)
    n = len(compiled)
    for i in range(n):
        ci, mi, _ = compiled[i]["_lt"]
        for j in range(i + 1, n):
            cj, mj, _ = compiled[j]["_lt"]
            if ci != cj:
                continue
            lcm = mono_lcm(mi, mj)
            s: Vec = {}
            vec_axpy(s, p - 1, mono_div(lcm, mi), compiled[i]["v"], p)
            vec_axpy(s, 1, mono_div(lcm, mj), compiled[j]["v"], p)
            if vec_normal_form(s, idx, okey, p):
                return False
    return True


# ---------------------------------------------------------------------------
# submodule bases with quotient semantics

_ACTIVE_CACHE = None


def set_active_cache(cache) -> None:
    global _ACTIVE_CACHE
    _ACTIVE_CACHE = cache


def _cached_buchberger(gens, rank, ring: Ring, degree_cap):
    cache = _ACTIVE_CACHE
    if cache is None:
        return buchberger_vectors(gens, ring, degree_cap)
    key = cache.digest(ring, rank, [vec_canonical_str(g, ring) for g in gens], degree_cap)
    hit = cache.get(key)
    if hit is not None:
        return hit
    out = buchberger_vectors(gens, ring, degree_cap)
    cache.put(key, out)
    return out


def modulus_vectors(ring: Ring, rank: int) -> list[Vec]:
    """J-multiples of the unit vectors of R^rank, at the base-ring level."""
    return [vec_from_poly(g, i) for i in range(rank) for g in ring.modulus]


class SubmoduleBasis:
    """Reduced base-ring Groebner basis of a submodule of R^rank.

    For a quotient ring the modulus multiples are adjoined, so normal forms
    are canonical representatives of classes in R^rank and membership is
    membership over R.
    """

    def __init__(self, ring: Ring, rank: int, gens, degree_cap: int = DEFAULT_DEGREE_CAP):
        self.ring = ring
        self.rank = rank
        base = ring.base
        work = [dict(g) for g in gens if g]
        work += modulus_vectors(ring, rank)
        self.elements = _cached_buchberger(work, rank, base, degree_cap)
        okey = base.order.key
        p = base.field.p
        self._compiled = _compile(self.elements, okey, p)
        self._index = _index_by_comp(self._compiled)
        self._okey = okey
        self._p = p
        self._all_lt_monomial = all(len(e["v"]) == 1 for e in self._compiled)

    def nf(self, v: Vec) -> Vec:
        if self._all_lt_monomial:
            # monomial submodule: a term survives iff no leading term divides it
            out = {}
            for (c, m), co in v.items():
                if not any(mono_divides(lm, m) for lm, _ in self._index.get(c, ())):
                    out[(c, m)] = co
            return out
        return vec_normal_form(v, self._index, self._okey, self._p)

    def contains(self, v: Vec) -> bool:
        return not self.nf(v)

    def leading_terms(self) -> list[Term]:
        return [e["_lt"][:2] for e in self._compiled]

    def is_std_term(self, comp: int, mono: Mono) -> bool:
        return not any(mono_divides(lm, mono) for lm, _ in self._index.get(comp, ()))


# ---------------------------------------------------------------------------
# syzygies

def syzygies(cols, rank: int, ring: Ring, degree_cap: int = DEFAULT_DEGREE_CAP):
    """Generators of the syzygy module of the given columns over ring.

    cols are vectors in R^rank.  The result is a list of vectors in
    R^len(cols) v with sum_t v_t * cols[t] = 0 in R^rank; over a quotient
    ring the kernel is computed by lifting to the base ring and adjoining
    modulus multiples of the unit vectors.
    """
    base = ring.base
    k = len(cols)
    jvecs = modulus_vectors(ring, rank)
    all_cols = [dict(c) for c in cols] + jvecs
    tagged = []
    for t, c in enumerate(all_cols):
        v = dict(c)
        v[(rank + t, (0,) * ring.n)] = 1
        tagged.append(v)
    gb = _cached_buchberger(tagged, rank + len(all_cols), base, degree_cap)
    out = []
    for g in gb:
        if min(c for c, _ in g) < rank:
            continue
        v = vec_restrict(g, rank, rank + k)
        if ring.is_quotient:
            v = _nf_entries(v, ring)
        if v:
            out.append(v)
    return out


def _nf_entries(v: Vec, ring: Ring) -> Vec:
    """Reduce each polynomial entry of a vector to its quotient normal form."""
    buckets: dict[int, dict] = {}
    for (c, m), co in v.items():
        buckets.setdefault(c, {})[m] = co
    out: Vec = {}
    for c, d in buckets.items():
        f = ring.from_dict(d)
        for m, co in f.terms:
            out[(c, m)] = co
    return out


def preimage_columns(u_cols, t_cols, rank: int, ring: Ring, degree_cap: int = DEFAULT_DEGREE_CAP):
    """Generators of {v : U v lies in the span of the T columns}."""
    syz = syzygies(list(u_cols) + list(t_cols), rank, ring, degree_cap)
    k = len(u_cols)
    out = []
    seen = set()
    for s in syz:
        v = {(c, m): co for (c, m), co in s.items() if c < k}
        if not v:
            continue
        key = tuple(sorted(v.items()))
        if key not in seen:
            seen.add(key)
            out.append(v)
    return out


# ---------------------------------------------------------------------------
# graded matrices

def shift_add(a, b):
    if isinstance(a, tuple):
        return tuple(x + y for x, y in zip(a, b))
    return a + b


def shift_sub(a, b):
    if isinstance(a, tuple):
        return tuple(x - y for x, y in zip(a, b))
    return a - b


def shift_neg(a):
    if isinstance(a, tuple):
        return tuple(-x for x in a)
    return -a


def shift_total(a) -> int:
    return sum(a) if isinstance(a, tuple) else a


def mono_degree(m: Mono, mode: str):
    return tuple(m) if mode == "Zn" else mono_deg(m)


def zero_shift(ring: Ring, mode: str):
    return (0,) * ring.n if mode == "Zn" else 0


class GradingError(RingError):
    """Inhomogeneous data where the grading mode requires homogeneity."""


def poly_degree_for_mode(f: Polynomial, mode: str):
    """The degree of a homogeneous polynomial, None for 0, GradingError if mixed."""
    if f.is_zero:
        return None
    if mode == "Zn":
        d = f.multidegree()
        if d is None:
            raise GradingError(f"not multihomogeneous: {f}")
        return d
    degs = {mono_deg(m) for m, _ in f.terms}
    if len(degs) != 1:
        raise GradingError(f"not homogeneous: {f}")
    return degs.pop()


def vec_degree(v: Vec, row_shifts, mode: str):
    """Common degree of a homogeneous vector (term degree + component shift)."""
    degs = {shift_add(row_shifts[c], mono_degree(m, mode)) for (c, m) in v}
    if len(degs) != 1:
        raise GradingError("inhomogeneous vector")
    return degs.pop()


class GradedMatrix:
    """Matrix over a ring with row and column degree shifts.

    Columns are elements of the free module with the given row shifts; a
    homogeneous entry at (i, j) has degree col_shifts[j] - row_shifts[i].
    """

    __slots__ = ("ring", "entries", "row_shifts", "col_shifts", "mode")

    def __init__(self, ring: Ring, entries, row_shifts, col_shifts, mode: str = "Z", check: bool = True):
        self.ring = ring
        self.entries = tuple(tuple(row) for row in entries)
        self.row_shifts = tuple(row_shifts)
        self.col_shifts = tuple(col_shifts)
        self.mode = mode
        if len(self.entries) != len(self.row_shifts):
            raise RingError("row count does not match row shifts")
        for row in self.entries:
            if len(row) != len(self.col_shifts):
                raise RingError("column count does not match column shifts")
        if check:
            self.validate()

    @property
    def nrows(self) -> int:
        return len(self.row_shifts)

    @property
    def ncols(self) -> int:
        return len(self.col_shifts)

    def validate(self) -> None:
        for i, row in enumerate(self.entries):
            for j, f in enumerate(row):
                if f.is_zero:
                    continue
                want = shift_sub(self.col_shifts[j], self.row_shifts[i])
                if poly_degree_for_mode(f, self.mode) != want:
                    raise GradingError(
                        f"entry ({i},{j}) has degree {poly_degree_for_mode(f, self.mode)}, expected {want}"
                    )

    def column(self, j: int) -> Vec:
        out: Vec = {}
        for i, row in enumerate(self.entries):
            for m, c in row[j].terms:
                out[(i, m)] = c
        return out

    def columns(self) -> list[Vec]:
        return [self.column(j) for j in range(self.ncols)]

    def entry(self, i: int, j: int) -> Polynomial:
        return self.entries[i][j]

    def compose(self, other: "GradedMatrix") -> "GradedMatrix":
        """self * other (apply other first)."""
        if other.nrows != self.ncols:
            raise RingError("matrix shapes do not compose")
        rows = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = self.ring.zero
                for k in range(self.ncols):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            rows.append(row)
        return GradedMatrix(self.ring, rows, self.row_shifts, other.col_shifts, self.mode, check=False)

    def is_zero(self) -> bool:
        return all(f.is_zero for row in self.entries for f in row)

    @staticmethod
    def from_columns(ring: Ring, cols, row_shifts, mode: str = "Z", col_shifts=None) -> "GradedMatrix":
        row_shifts = tuple(row_shifts)
        rank = len(row_shifts)
        if col_shifts is None:
            col_shifts = [vec_degree(c, row_shifts, mode) if c else zero_shift(ring, mode) for c in cols]
        entries = []
        for i in range(rank):
            row = []
            for c in cols:
                d = {m: co for (cc, m), co in c.items() if cc == i}
                row.append(ring._from_reduced_dict(d))
            entries.append(row)
        return GradedMatrix(ring, entries, row_shifts, col_shifts, mode)

    @staticmethod
    def zero(ring: Ring, row_shifts, mode: str = "Z") -> "GradedMatrix":
        return GradedMatrix(ring, [[] for _ in row_shifts], row_shifts, (), mode)

    def __repr__(self):
        body = "; ".join(", ".join(str(f) for f in row) for row in self.entries)
        return f"GradedMatrix[{self.nrows}x{self.ncols}]({body})"


# ---------------------------------------------------------------------------
# ideals

class Ideal:
    """An ideal of a (possibly quotient) ring, given by generators."""

    __slots__ = ("ring", "gens", "_basis")

    def __init__(self, ring: Ring, gens):
        self.ring = ring
        polys = []
        for g in gens:
            if isinstance(g, str):
                g = ring.parse(g)
            if g.ring is not ring:
                raise RingError("generator from a different ring")
            if not g.is_zero:
                polys.append(g)
        self.gens = tuple(polys)
        self._basis = None

    def basis(self) -> SubmoduleBasis:
        if self._basis is None:
            self._basis = SubmoduleBasis(self.ring, 1, [vec_from_poly(g) for g in self.gens])
        return self._basis

    def groebner_basis(self) -> tuple:
        """Reduced Groebner basis as ring elements (modulus components dropped)."""
        out = []
        for v in self.basis().elements:
            f = self.ring.from_dict({m: c for (_, m), c in v.items()})
            if not f.is_zero:
                out.append(f)
        return tuple(out)

    def contains(self, f: Polynomial) -> bool:
        if isinstance(f, str):
            f = self.ring.parse(f)
        return self.basis().contains(vec_from_poly(f))

    def normal_form(self, f: Polynomial) -> Polynomial:
        v = self.basis().nf(vec_from_poly(f))
        return self.ring.from_dict({m: c for (_, m), c in v.items()})

    def is_zero(self) -> bool:
        return not self.groebner_basis()

    def is_unit(self) -> bool:
        gb = self.groebner_basis()
        return any(g.is_unit_constant() for g in gb)

    def __add__(self, other: "Ideal") -> "Ideal":
        if other.ring is not self.ring:
            raise RingError("ideals from different rings")
        return Ideal(self.ring, self.gens + other.gens)

    def power(self, a: int) -> "Ideal":
        if a < 0:
            raise RingError("negative ideal power")
        if a == 0:
            return Ideal(self.ring, [self.ring.one])
        from itertools import combinations_with_replacement

        prods = []
        for combo in combinations_with_replacement(self.gens, a):
            f = self.ring.one
            for g in combo:
                f = f * g
            prods.append(f)
        return Ideal(self.ring, prods)

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.gens)

    def __repr__(self):
        return "ideal(" + ", ".join(str(g) for g in self.gens) + ")"


def maximal_ideal(ring: Ring) -> Ideal:
    return Ideal(ring, list(ring.gens))


# ---------------------------------------------------------------------------
# quotient rings

def quotient_ring(s: Ring, gens) -> Ring:
    """R = S / (gens), with the modulus stored as a reduced Groebner basis."""
    if s.is_quotient:
        raise RingError("iterated quotients are not supported; quotient the base ring")
    polys = []
    for g in gens:
        if isinstance(g, str):
            g = s.parse(g)
        if not g.is_zero:
            polys.append(g)
    gb = buchberger_vectors([vec_from_poly(g) for g in polys], s)
    modulus = [s._from_reduced_dict({m: c for (_, m), c in v.items()}) for v in gb]
    return Ring(s.names, s.field, s.order, modulus=modulus, base=s)
