"""Group backends with exact, decidable operations.

Every oracle is an immutable value object: equality and hashing are
structural, so two independently built copies of the same group are
interchangeable.  Elements are plain hashable Python values in a
canonical form fixed per backend:

  finite table   int index into the element list
  permutation    image tuple (p[0], ..., p[n-1]), composition p*q = p o q
  free           reduced word as a tuple of nonzero signed generator
                 numbers, generator i is +i, its inverse -i (1-based)
  direct         tuple of factor elements
  free product   tuple of (factor index, element) syllables, adjacent
                 factor indices distinct, no identity syllables
  semidirect     (base element, acting element), the acting element a
                 permutation of base indices that is an automorphism

Canonical forms make Python == the group equality, which the chain
layer relies on for dictionary keys.
"""

from __future__ import annotations

import itertools


class GroupAxiomError(ValueError):
    """A group law failed, or a description does not define a group."""


class HomomorphismError(ValueError):
    """The homomorphism law failed; the message carries a witness."""


class GroupOracle:
    backend = "abstract"

    def identity(self):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def eq(self, a, b) -> bool:
        # all backends keep canonical representatives
        return a == b

    def contains(self, a) -> bool:
        raise NotImplementedError

    def order(self) -> int | None:
        """Group order, None when infinite."""
        return None

    def is_finite(self) -> bool:
        return self.order() is not None

    def elements(self) -> list:
        raise GroupAxiomError("%s backend has no element enumeration" % self.backend)

    def element_index(self, a) -> int:
        raise GroupAxiomError("%s backend has no element index" % self.backend)

    def sample(self, rng):
        """A random element, for sampled law checks and property tests."""
        raise NotImplementedError

    def canonical_key(self, a):
        """A totally ordered key, used to sort tuples deterministically."""
        return a

    def describe(self) -> str:
        return self.backend

    def check_member(self, a):
        if not self.contains(a):
            raise GroupAxiomError(
                "element %r does not belong to this %s oracle" % (a, self.backend))

    def _key(self):
        raise NotImplementedError

    def __eq__(self, other):
        return type(self) is type(other) and self._key() == other._key()

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        h = getattr(self, "_hash", None)
        if h is None:
            h = hash((type(self).__name__, self._key()))
            self._hash = h
        return h

    def __repr__(self):
        return "<%s>" % self.describe()


class FiniteTableGroup(GroupOracle):
    """Finite group given by a Cayley table.  Elements are indices."""

    backend = "finite"

    def __init__(self, table, names=None, check=True):
        self.table = tuple(tuple(row) for row in table)
        n = len(self.table)
        if names is None:
            names = ["g%d" % i for i in range(n)]
        if len(names) != n:
            raise GroupAxiomError("got %d names for %d elements" % (len(names), n))
        self.names = tuple(str(x) for x in names)
        if len(set(self.names)) != n:
            raise GroupAxiomError("element names are not distinct")
        for i, row in enumerate(self.table):
            if len(row) != n:
                raise GroupAxiomError("table row %d has length %d, expected %d"
                                      % (i, len(row), n))
            for v in row:
                if not isinstance(v, int) or not 0 <= v < n:
                    raise GroupAxiomError("table entry %r out of range" % (v,))
        self._identity = self._find_identity()
        if check:
            self._check_table()
        self._inv = self._build_inverses()

    def _find_identity(self):
        n = len(self.table)
        for e in range(n):
            if all(self.table[e][j] == j for j in range(n)) and \
               all(self.table[i][e] == i for i in range(n)):
                return e
        raise GroupAxiomError("table has no two-sided identity element")

    def _check_table(self):
        n = len(self.table)
        for i, row in enumerate(self.table):
            if len(set(row)) != n:
                raise GroupAxiomError(
                    "row of %r is not a bijection" % (self.names[i],))
        for j in range(n):
            col = [self.table[i][j] for i in range(n)]
            if len(set(col)) != n:
                raise GroupAxiomError(
                    "column of %r is not a bijection" % (self.names[j],))
        # associativity is cubic; fine at table-file sizes
        for a in range(n):
            for b in range(n):
                ab = self.table[a][b]
                for c in range(n):
                    if self.table[ab][c] != self.table[a][self.table[b][c]]:
                        raise GroupAxiomError(
                            "associativity fails on (%s, %s, %s)"
                            % (self.names[a], self.names[b], self.names[c]))

    def _build_inverses(self):
        n = len(self.table)
        inv = [None] * n
        for a in range(n):
            for b in range(n):
                if self.table[a][b] == self._identity:
                    inv[a] = b
                    break
            if inv[a] is None or self.table[inv[a]][a] != self._identity:
                raise GroupAxiomError("no inverse for %r" % (self.names[a],))
        return tuple(inv)

    def identity(self):
        return self._identity

    def mul(self, a, b):
        self.check_member(a)
        self.check_member(b)
        return self.table[a][b]

    def inv(self, a):
        self.check_member(a)
        return self._inv[a]

    def contains(self, a):
        return isinstance(a, int) and 0 <= a < len(self.table)

    def order(self):
        return len(self.table)

    def elements(self):
        return list(range(len(self.table)))

    def element_index(self, a):
        self.check_member(a)
        return a

    def sample(self, rng):
        return rng.randrange(len(self.table))

    def describe(self):
        return "finite group of order %d" % len(self.table)

    def _key(self):
        return (self.names, self.table)


class PermutationGroup(GroupOracle):
    """Subgroup of S_degree generated by image tuples."""

    backend = "perm"

    def __init__(self, degree, generators):
        self.degree = int(degree)
        gens = []
        for g in generators:
            g = tuple(int(x) for x in g)
            if sorted(g) != list(range(self.degree)):
                raise GroupAxiomError(
                    "generator %r is not a permutation of 0..%d" % (g, self.degree - 1))
            gens.append(g)
        self.generators = tuple(gens)
        self._els = None

    def identity(self):
        return tuple(range(self.degree))

    def mul(self, a, b):
        self.check_member(a)
        self.check_member(b)
        return tuple(a[b[i]] for i in range(self.degree))

    def inv(self, a):
        self.check_member(a)
        out = [0] * self.degree
        for i, v in enumerate(a):
            out[v] = i
        return tuple(out)

    def contains(self, a):
        # shape check only; closure membership is contains_strict
        return isinstance(a, tuple) and len(a) == self.degree

    def contains_strict(self, a):
        return self.contains(a) and a in self._closure_set()

    def _closure_set(self):
        if self._els is None:
            seen = {self.identity()}
            frontier = [self.identity()]
            while frontier:
                nxt = []
                for a in frontier:
                    for g in self.generators:
                        b = tuple(g[a[i]] for i in range(self.degree))
                        if b not in seen:
                            seen.add(b)
                            nxt.append(b)
                frontier = nxt
            self._els = sorted(seen)
        return set(self._els)

    def order(self):
        self._closure_set()
        return len(self._els)

    def elements(self):
        self._closure_set()
        return list(self._els)

    def element_index(self, a):
        idx = getattr(self, "_idx", None)
        if idx is None:
            idx = {g: i for i, g in enumerate(self.elements())}
            self._idx = idx
        if a not in idx:
            raise GroupAxiomError("%r is not in the generated group" % (a,))
        return idx[a]

    def sample(self, rng):
        els = self.elements()
        return els[rng.randrange(len(els))]

    def describe(self):
        return "permutation group on %d points, %d generators" % (
            self.degree, len(self.generators))

    def _key(self):
        return (self.degree, tuple(sorted(self.generators)))


class FreeGroup(GroupOracle):
    """Free group of finite rank; elements are reduced words."""

    backend = "free"

    def __init__(self, rank):
        if rank < 0:
            raise GroupAxiomError("free group rank must be >= 0")
        self.rank = int(rank)

    def identity(self):
        return ()

    def mul(self, a, b):
        self.check_member(a)
        self.check_member(b)
        out = list(a)
        for x in b:
            if out and out[-1] == -x:
                out.pop()
            else:
                out.append(x)
        return tuple(out)

    def inv(self, a):
        self.check_member(a)
        return tuple(-x for x in reversed(a))

    def contains(self, a):
        if not isinstance(a, tuple):
            return False
        for i, x in enumerate(a):
            if not isinstance(x, int) or x == 0 or abs(x) > self.rank:
                return False
            if i and a[i - 1] == -x:
                return False  # not reduced
        return True

    def sample(self, rng, max_len=6):
        word = []
        for _ in range(rng.randrange(max_len + 1)):
            while True:
                x = rng.choice([1, -1]) * rng.randrange(1, self.rank + 1)
                if not word or word[-1] != -x:
                    break
            word.append(x)
        return tuple(word)

    def order(self):
        return 1 if self.rank == 0 else None

    def elements(self):
        if self.rank == 0:
            return [()]
        return super().elements()

    def element_index(self, a):
        if self.rank == 0 and a == ():
            return 0
        return super().element_index(a)

    def ball(self, radius):
        """All reduced words of length <= radius, deterministic order."""
        words = [()]
        frontier = [()]
        for _ in range(radius):
            nxt = []
            for w in frontier:
                for x in range(1, self.rank + 1):
                    for s in (x, -x):
                        if w and w[-1] == -s:
                            continue
                        nxt.append(w + (s,))
            words.extend(nxt)
            frontier = nxt
        return words

    def describe(self):
        return "free group of rank %d" % self.rank

    def _key(self):
        return self.rank


class DirectProduct(GroupOracle):
    backend = "direct"

    def __init__(self, factors):
        self.factors = tuple(factors)
        if not self.factors:
            raise GroupAxiomError("direct product needs at least one factor")
        self._els = None

    def identity(self):
        return tuple(f.identity() for f in self.factors)

    def _split(self, a):
        if not isinstance(a, tuple) or len(a) != len(self.factors):
            raise GroupAxiomError(
                "element %r does not match a %d-factor product" % (a, len(self.factors)))
        return a

    def mul(self, a, b):
        a = self._split(a)
        b = self._split(b)
        return tuple(f.mul(x, y) for f, x, y in zip(self.factors, a, b))

    def inv(self, a):
        a = self._split(a)
        return tuple(f.inv(x) for f, x in zip(self.factors, a))

    def contains(self, a):
        return (isinstance(a, tuple) and len(a) == len(self.factors)
                and all(f.contains(x) for f, x in zip(self.factors, a)))

    def order(self):
        total = 1
        for f in self.factors:
            n = f.order()
            if n is None:
                return None
            total *= n
        return total

    def elements(self):
        if self._els is None:
            self._els = [tuple(t) for t in itertools.product(
                *[f.elements() for f in self.factors])]
        return list(self._els)

    def element_index(self, a):
        a = self._split(a)
        idx = 0
        for f, x in zip(self.factors, a):
            idx = idx * f.order() + f.element_index(x)
        return idx

    def sample(self, rng):
        return tuple(f.sample(rng) for f in self.factors)

    def canonical_key(self, a):
        return tuple(f.canonical_key(x) for f, x in zip(self.factors, a))

    def describe(self):
        return "direct product of %d factors" % len(self.factors)

    def _key(self):
        return self.factors


class FreeProduct(GroupOracle):
    """Free product; elements are alternating nontrivial syllable words."""

    backend = "freeprod"

    def __init__(self, factors):
        self.factors = tuple(factors)
        if len(self.factors) < 2:
            raise GroupAxiomError("free product needs at least two factors")

    def identity(self):
        return ()

    def mul(self, a, b):
        self.check_member(a)
        self.check_member(b)
        out = list(a)
        for fi, x in b:
            if out and out[-1][0] == fi:
                f = self.factors[fi]
                m = f.mul(out[-1][1], x)
                if f.eq(m, f.identity()):
                    out.pop()
                else:
                    out[-1] = (fi, m)
            else:
                out.append((fi, x))
        return tuple(out)

    def inv(self, a):
        self.check_member(a)
        return tuple((fi, self.factors[fi].inv(x)) for fi, x in reversed(a))

    def contains(self, a):
        if not isinstance(a, tuple):
            return False
        prev = None
        for syl in a:
            if not (isinstance(syl, tuple) and len(syl) == 2):
                return False
            fi, x = syl
            if not isinstance(fi, int) or not 0 <= fi < len(self.factors):
                return False
            f = self.factors[fi]
            if not f.contains(x) or f.eq(x, f.identity()) or fi == prev:
                return False
            prev = fi
        return True

    def order(self):
        nontrivial = [f.order() for f in self.factors if f.order() != 1]
        if not nontrivial:
            return 1
        if len(nontrivial) == 1:
            return nontrivial[0]
        return None

    def sample(self, rng, max_syllables=4):
        word = ()
        fi = rng.randrange(len(self.factors))
        for _ in range(rng.randrange(max_syllables + 1)):
            f = self.factors[fi]
            x = f.sample(rng)
            if not f.eq(x, f.identity()):
                word = self.mul(word, ((fi, x),))
            fi = (fi + rng.randrange(1, len(self.factors))) % len(self.factors)
        return word

    def canonical_key(self, a):
        return tuple((fi, self.factors[fi].canonical_key(x)) for fi, x in a)

    def describe(self):
        return "free product of %d factors" % len(self.factors)

    def _key(self):
        return self.factors


class SemidirectProduct(GroupOracle):
    """base x| action, the action an explicit automorphism table.

    The acting group is a permutation group on base element indices;
    each acting element permutes the base and must respect its law.
    Only the generators are checked, the closure then consists of
    automorphisms automatically.
    """

    backend = "semidirect"

    def __init__(self, base, action, check=True):
        if not base.is_finite():
            raise GroupAxiomError("semidirect base must be finite")
        if not isinstance(action, PermutationGroup):
            raise GroupAxiomError("action must be a permutation group on base indices")
        if action.degree != base.order():
            raise GroupAxiomError(
                "action degree %d does not match base order %d"
                % (action.degree, base.order()))
        self.base = base
        self.action = action
        self._base_els = base.elements()
        if check:
            for g in action.generators:
                self._check_automorphism(g)
        self._els = None

    def _check_automorphism(self, perm):
        els = self._base_els
        n = len(els)
        for i in range(n):
            for j in range(n):
                lhs = perm[self.base.element_index(self.base.mul(els[i], els[j]))]
                rhs = self.base.element_index(
                    self.base.mul(els[perm[i]], els[perm[j]]))
                if lhs != rhs:
                    raise GroupAxiomError(
                        "action table is not an automorphism: fails on (%r, %r)"
                        % (els[i], els[j]))

    def act(self, h, b):
        return self._base_els[h[self.base.element_index(b)]]

    def identity(self):
        return (self.base.identity(), self.action.identity())

    def _split(self, a):
        if not (isinstance(a, tuple) and len(a) == 2):
            raise GroupAxiomError("element %r is not a (base, acting) pair" % (a,))
        return a

    def mul(self, a, b):
        b1, h1 = self._split(a)
        b2, h2 = self._split(b)
        return (self.base.mul(b1, self.act(h1, b2)), self.action.mul(h1, h2))

    def inv(self, a):
        b, h = self._split(a)
        hi = self.action.inv(h)
        return (self.act(hi, self.base.inv(b)), hi)

    def contains(self, a):
        return (isinstance(a, tuple) and len(a) == 2
                and self.base.contains(a[0]) and self.action.contains(a[1]))

    def order(self):
        return self.base.order() * self.action.order()

    def elements(self):
        if self._els is None:
            self._els = [(b, h) for b in self._base_els
                         for h in self.action.elements()]
        return list(self._els)

    def element_index(self, a):
        b, h = self._split(a)
        return (self.base.element_index(b) * self.action.order()
                + self.action.element_index(h))

    def sample(self, rng):
        return (self.base.sample(rng), self.action.sample(rng))

    def canonical_key(self, a):
        return (self.base.canonical_key(a[0]), a[1])

    def describe(self):
        return "semidirect product of order %d" % self.order()

    def _key(self):
        return (self.base, self.action)


def cyclic_group(n) -> FiniteTableGroup:
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return FiniteTableGroup(table, names=[str(i) for i in range(n)], check=False)


def symmetric_group_perm(n) -> PermutationGroup:
    if n < 2:
        return PermutationGroup(max(n, 1), [])
    swap = tuple([1, 0] + list(range(2, n)))
    cycle = tuple(list(range(1, n)) + [0])
    return PermutationGroup(n, [swap, cycle])


def cayley_table_from(G) -> FiniteTableGroup:
    """Materialize any finite oracle as a Cayley-table oracle."""
    els = G.elements()
    idx = {id_key: i for i, id_key in enumerate(map(G.canonical_key, els))}
    table = [[idx[G.canonical_key(G.mul(a, b))] for b in els] for a in els]
    return FiniteTableGroup(table, check=False)


def is_abelian(G, witness=False):
    els = G.elements()
    for a in els:
        for b in els:
            if not G.eq(G.mul(a, b), G.mul(b, a)):
                return (False, (a, b)) if witness else False
    return (True, None) if witness else True


def check_axioms(G, rng=None, samples=300) -> dict:
    """Associativity, identity, inverses; exhaustive when cheap.

    Returns a report dict; raises GroupAxiomError on first failure.
    """
    n = G.order()
    exhaustive = n is not None and n ** 3 <= 300_000
    if exhaustive:
        triples = itertools.product(G.elements(), repeat=3)
    else:
        if rng is None:
            import random
            rng = random.Random(0)
        triples = ((G.sample(rng), G.sample(rng), G.sample(rng))
                   for _ in range(samples))
    e = G.identity()
    count = 0
    for a, b, c in triples:
        if not G.eq(G.mul(G.mul(a, b), c), G.mul(a, G.mul(b, c))):
            raise GroupAxiomError("associativity fails on (%r, %r, %r)" % (a, b, c))
        if not G.eq(G.mul(a, e), a) or not G.eq(G.mul(e, a), a):
            raise GroupAxiomError("identity law fails on %r" % (a,))
        ai = G.inv(a)
        if not G.eq(G.mul(a, ai), e) or not G.eq(G.mul(ai, a), e):
            raise GroupAxiomError("inverse law fails on %r" % (a,))
        count += 1
    return {"mode": "exhaustive" if exhaustive else "sampled",
            "checked_triples": count, "order": n}


def build_group(spec: dict) -> GroupOracle:
    """Build an oracle from a structured description record."""
    if not isinstance(spec, dict) or "type" not in spec:
        raise GroupAxiomError("group record must be an object with a 'type' field")
    kind = spec["type"]
    if kind == "finite":
        if "table" not in spec:
            raise GroupAxiomError("finite group record needs a 'table'")
        return FiniteTableGroup(spec["table"], names=spec.get("elements"))
    if kind == "perm":
        return PermutationGroup(spec.get("degree", 0), spec.get("generators", []))
    if kind == "free":
        return FreeGroup(spec.get("rank", 0))
    if kind == "product":
        op = spec.get("op")
        factors = [build_group(f) for f in spec.get("factors", [])]
        if op == "direct":
            return DirectProduct(factors)
        if op == "free":
            return FreeProduct(factors)
        raise GroupAxiomError("unknown product op %r" % (op,))
    if kind == "semidirect":
        base = build_group(spec["base"])
        tables = spec.get("action", [])
        action = PermutationGroup(base.order(), tables)
        return SemidirectProduct(base, action)
    raise GroupAxiomError("unknown group type %r" % (kind,))


def group_to_spec(G) -> dict:
    """Inverse of build_group, for self-contained certificates."""
    if isinstance(G, FiniteTableGroup):
        return {"type": "finite", "elements": list(G.names),
                "table": [list(r) for r in G.table]}
    if isinstance(G, PermutationGroup):
        return {"type": "perm", "degree": G.degree,
                "generators": [list(g) for g in G.generators]}
    if isinstance(G, FreeGroup):
        return {"type": "free", "rank": G.rank}
    if isinstance(G, DirectProduct):
        return {"type": "product", "op": "direct",
                "factors": [group_to_spec(f) for f in G.factors]}
    if isinstance(G, FreeProduct):
        return {"type": "product", "op": "free",
                "factors": [group_to_spec(f) for f in G.factors]}
    if isinstance(G, SemidirectProduct):
        return {"type": "semidirect", "base": group_to_spec(G.base),
                "action": [list(g) for g in G.action.generators]}
    raise GroupAxiomError("cannot serialize %r" % (G,))


class Homomorphism:
    def __init__(self, source, target, fn, name="hom"):
        self.source = source
        self.target = target
        self.fn = fn
        self.name = name

    def apply(self, g):
        self.source.check_member(g)
        return self.fn(g)

    __call__ = apply

    def __repr__(self):
        return "<%s: %s -> %s>" % (self.name, self.source.describe(),
                                   self.target.describe())


def verify_hom(h: Homomorphism, rng=None, samples=10_000,
               exhaustive_pair_limit=300_000) -> dict:
    """Check h(ab) = h(a)h(b); exhaustive for small finite sources."""
    S, T = h.source, h.target
    e_img = h(S.identity())
    if not T.eq(e_img, T.identity()):
        raise HomomorphismError("%s does not send identity to identity" % h.name)
    n = S.order()
    if n is not None and n * n <= exhaustive_pair_limit:
        pairs = itertools.product(S.elements(), repeat=2)
        mode = "exhaustive"
    else:
        if rng is None:
            import random
            rng = random.Random(0)
        pairs = ((S.sample(rng), S.sample(rng)) for _ in range(samples))
        mode = "sampled"
    count = 0
    for a, b in pairs:
        if not T.eq(h(S.mul(a, b)), T.mul(h(a), h(b))):
            raise HomomorphismError(
                "law fails for %s on witness pair (%r, %r)" % (h.name, a, b))
        count += 1
    return {"mode": mode, "checked_pairs": count}


def build_hom(source, target, table=None, images=None, fn=None,
              name="hom", check=True, rng=None, samples=10_000) -> Homomorphism:
    """Constructor from an element table, generator images, or a function."""
    given = sum(x is not None for x in (table, images, fn))
    if given != 1:
        raise HomomorphismError("give exactly one of table, images, fn")
    if table is not None:
        if not source.is_finite():
            raise HomomorphismError("element tables need a finite source")
        mapping = dict(table)
        for a in source.elements():
            if a not in mapping:
                raise HomomorphismError("table misses element %r" % (a,))
        fn = mapping.__getitem__
    elif images is not None:
        if not isinstance(source, FreeGroup):
            raise HomomorphismError("generator images need a free source")
        if len(images) != source.rank:
            raise HomomorphismError(
                "expected %d images, got %d" % (source.rank, len(images)))
        images = list(images)

        def fn(word, _im=images):
            out = target.identity()
            for x in word:
                g = _im[abs(x) - 1]
                out = target.mul(out, g if x > 0 else target.inv(g))
            return out

    h = Homomorphism(source, target, fn, name=name)
    if check:
        verify_hom(h, rng=rng, samples=samples)
    return h


def identity_hom(G) -> Homomorphism:
    return Homomorphism(G, G, lambda g: g, name="id")


def trivial_hom(source, target) -> Homomorphism:
    e = target.identity()
    return Homomorphism(source, target, lambda g: e, name="trivial")


def compose_homs(outer: Homomorphism, inner: Homomorphism) -> Homomorphism:
    if inner.target != outer.source:
        raise HomomorphismError("homomorphisms do not compose: %r then %r"
                                % (inner, outer))
    return Homomorphism(inner.source, outer.target,
                        lambda g: outer.fn(inner.fn(g)),
                        name="%s.%s" % (outer.name, inner.name))


def conjugation(G, k, inverse=False) -> Homomorphism:
    """gamma_k(g) = k g k^-1; with inverse=True, gamma_{k^-1}."""
    G.check_member(k)
    if inverse:
        k = G.inv(k)
    ki = G.inv(k)
    return Homomorphism(G, G, lambda g: G.mul(G.mul(k, g), ki), name="conj")


def diagonal_hom(G, product=None) -> Homomorphism:
    P = product if product is not None else DirectProduct((G, G))
    if not (isinstance(P, DirectProduct) and len(P.factors) == 2
            and P.factors[0] == G and P.factors[1] == G):
        raise HomomorphismError("diagonal needs the product G x G")
    return Homomorphism(G, P, lambda g: (g, g), name="diag")


def projection_hom(P: DirectProduct, k) -> Homomorphism:
    return Homomorphism(P, P.factors[k], lambda a: a[k], name="proj%d" % k)


def inclusion_hom(P: DirectProduct, k) -> Homomorphism:
    e = P.identity()

    def fn(g, _e=e, _k=k):
        out = list(_e)
        out[_k] = g
        return tuple(out)

    return Homomorphism(P.factors[k], P, fn, name="incl%d" % k)


def pair_hom(h1: Homomorphism, h2: Homomorphism,
             source=None, target=None) -> Homomorphism:
    """h1 x h2 componentwise on two-factor direct products."""
    S = source if source is not None else DirectProduct((h1.source, h2.source))
    T = target if target is not None else DirectProduct((h1.target, h2.target))
    return Homomorphism(S, T, lambda a: (h1.fn(a[0]), h2.fn(a[1])),
                        name="%s x %s" % (h1.name, h2.name))


def free_product_inclusion(P: FreeProduct, k) -> Homomorphism:
    f = P.factors[k]

    def fn(g, _f=f, _k=k):
        return () if _f.eq(g, _f.identity()) else ((_k, g),)

    return Homomorphism(f, P, fn, name="fp-incl%d" % k)


def free_product_projection(P: FreeProduct, k) -> Homomorphism:
    f = P.factors[k]

    def fn(word, _f=f, _k=k):
        out = _f.identity()
        for fi, x in word:
            if fi == _k:
                out = _f.mul(out, x)
        return out

    return Homomorphism(P, f, fn, name="fp-proj%d" % k)
