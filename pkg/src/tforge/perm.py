"""Permutations, stabilizer chains, spherical generators and Hurwitz orbits.

Permutations act on the right: ``(x)(a*b) == ((x)a)b``.  Internally points
are ``0..n-1``; cycle notation for input/output is 1-based, e.g.
``"(1,2)(3,4)"``.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from itertools import permutations, product
from math import factorial, lcm

MAX_DEGREE = 32


class Perm:
    __slots__ = ("img",)

    def __init__(self, img):
        img = tuple(img)
        if sorted(img) != list(range(len(img))):
            raise ValueError("not a bijection")
        object.__setattr__(self, "img", img)

    def __setattr__(self, name, value):
        raise AttributeError("Perm is immutable")

    @classmethod
    def _raw(cls, img: tuple) -> Perm:
        p = object.__new__(cls)
        object.__setattr__(p, "img", img)
        return p

    @classmethod
    def identity(cls, n: int) -> Perm:
        return cls._raw(tuple(range(n)))

    @classmethod
    def from_cycles(cls, cycles, n: int) -> Perm:
        img = list(range(n))
        seen = set()
        for cyc in cycles:
            for x in cyc:
                if not 1 <= x <= n:
                    raise ValueError(f"point {x} out of range 1..{n}")
                if x in seen:
                    raise ValueError(f"point {x} repeated in cycle notation")
                seen.add(x)
            for i, x in enumerate(cyc):
                img[x - 1] = cyc[(i + 1) % len(cyc)] - 1
        return cls(img)

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> Perm:
        """Parse 1-based cycle notation like ``"(1,2)(3,4)"``; ``"()"`` is the identity."""
        s = text.strip()
        if not re.fullmatch(r"(\(\s*(\d+\s*(,\s*\d+\s*)*)?\)\s*)+", s):
            raise ValueError(f"could not parse permutation {text!r}")
        cycles = [
            [int(x) for x in body.split(",")]
            for body in re.findall(r"\(([^)]*)\)", s)
            if body.strip()
        ]
        top = max((max(c) for c in cycles), default=0)
        if n is None:
            n = top
        if top > n:
            raise ValueError(f"point {top} exceeds degree {n}")
        return cls.from_cycles(cycles, n)

    @property
    def degree(self) -> int:
        return len(self.img)

    def __call__(self, x: int) -> int:
        return self.img[x]

    def __mul__(self, other: Perm) -> Perm:
        b = other.img
        return Perm._raw(tuple(b[x] for x in self.img))

    def inverse(self) -> Perm:
        inv = [0] * len(self.img)
        for i, x in enumerate(self.img):
            inv[x] = i
        return Perm._raw(tuple(inv))

    def __pow__(self, k: int) -> Perm:
        if k < 0:
            return self.inverse() ** (-k)
        out, base = Perm.identity(self.degree), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conj(self, c: Perm) -> Perm:
        """c^-1 * self * c."""
        return c.inverse() * self * c

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.img))

    def cycles(self) -> list[list[int]]:
        """Cycles (0-based points), fixed points included."""
        seen = [False] * len(self.img)
        out = []
        for i in range(len(self.img)):
            if seen[i]:
                continue
            cyc = []
            j = i
            while not seen[j]:
                seen[j] = True
                cyc.append(j)
                j = self.img[j]
            out.append(cyc)
        return out

    def order(self) -> int:
        return lcm(*(len(c) for c in self.cycles())) if self.img else 1

    def __eq__(self, other):
        return isinstance(other, Perm) and self.img == other.img

    def __lt__(self, other):
        return self.img < other.img

    def __hash__(self):
        return hash(self.img)

    def __repr__(self):
        return f"Perm({self})"

    def __str__(self):
        cyc = [c for c in self.cycles() if len(c) > 1]
        if not cyc:
            return "()"
        return "".join("(" + ",".join(str(x + 1) for x in c) + ")" for c in cyc)


def cycle_type(p: Perm) -> tuple[int, ...]:
    """Sorted cycle lengths, largest first, fixed points included."""
    return tuple(sorted((len(c) for c in p.cycles()), reverse=True))


def parse_perm_list(text: str, n: int | None = None) -> list[Perm]:
    """Parse ``"(1,2)(3,4), (1,5,7)..."`` or ``;``-separated lists of permutations."""
    chunks = [c for c in re.split(r"\)\s*[,;]\s*\(|;", text.strip()) if c.strip()]
    fixed = []
    for i, c in enumerate(chunks):
        c = c.strip()
        if not c.startswith("("):
            c = "(" + c
        if not c.endswith(")"):
            c = c + ")"
        fixed.append(c)
    if n is None:
        nums = [int(x) for x in re.findall(r"\d+", text)]
        n = max(nums, default=0)
    return [Perm.parse(c, n) for c in fixed]


# -- raw tuple helpers (hot loops) ---------------------------------------


def _mul(a: tuple, b: tuple) -> tuple:
    return tuple(b[x] for x in a)


def _inv(a: tuple) -> tuple:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def _order(a: tuple) -> int:
    n = len(a)
    seen = [False] * n
    out = 1
    for i in range(n):
        if seen[i]:
            continue
        k = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = a[j]
            k += 1
        out = lcm(out, k)
    return out


# -- stabilizer chains ---------------------------------------------------


class _Level:
    __slots__ = ("base", "gens", "trans")

    def __init__(self, base: int, ident: tuple):
        self.base = base
        self.gens: list[tuple] = []
        self.trans: dict[int, tuple] = {base: ident}


class StabilizerChain:
    """Deterministic Schreier-Sims; transversals stored explicitly."""

    def __init__(self, gens, n: int):
        if n > MAX_DEGREE:
            raise ValueError(f"degree {n} exceeds the supported maximum {MAX_DEGREE}")
        self.n = n
        self.ident = tuple(range(n))
        self.levels: list[_Level] = []
        for g in gens:
            if g != self.ident and not self.contains(g):
                self._add(0, g)

    def strip(self, g: tuple, start: int = 0) -> tuple[tuple, int]:
        for i in range(start, len(self.levels)):
            lvl = self.levels[i]
            x = g[lvl.base]
            u = lvl.trans.get(x)
            if u is None:
                return g, i
            g = _mul(g, _inv(u))
        return g, len(self.levels)

    def contains(self, g: tuple) -> bool:
        h, _ = self.strip(g)
        return h == self.ident

    def _add(self, i: int, g: tuple) -> None:
        if i == len(self.levels):
            base = next(x for x in range(self.n) if g[x] != x)
            self.levels.append(_Level(base, self.ident))
        lvl = self.levels[i]
        lvl.gens.append(g)
        # pairs (point, generator) whose Schreier generators still need testing
        pending = [(p, g) for p in list(lvl.trans)]
        while pending:
            p, s = pending.pop()
            u = lvl.trans[p]
            q = s[p]
            us = _mul(u, s)
            if q not in lvl.trans:
                lvl.trans[q] = us
                pending.extend((q, t) for t in lvl.gens)
                continue
            sg = _mul(us, _inv(lvl.trans[q]))
            h, j = self.strip(sg, i + 1)
            if h != self.ident:
                self._add(i + 1, h)

    def order(self) -> int:
        out = 1
        for lvl in self.levels:
            out *= len(lvl.trans)
        return out

    @property
    def base(self) -> list[int]:
        return [lvl.base for lvl in self.levels]

    def elements(self):
        """Every group element exactly once, as raw tuples."""
        transversals = [list(lvl.trans.values()) for lvl in reversed(self.levels)]
        for combo in product(*transversals):
            g = self.ident
            for u in combo:
                g = _mul(g, u)
            yield g


class PermGroup:
    """Permutation group given by generators; stabilizer chain built lazily."""

    def __init__(self, generators, degree: int | None = None, name: str | None = None):
        gens = list(generators)
        if degree is None:
            if not gens:
                raise ValueError("degree needed for a group without generators")
            degree = gens[0].degree
        if any(g.degree != degree for g in gens):
            raise ValueError("generators of different degrees")
        self.degree = degree
        self.generators = gens
        self.name = name
        self._chain: StabilizerChain | None = None
        self._elements: list[tuple] | None = None
        self._classes = None

    @property
    def chain(self) -> StabilizerChain:
        if self._chain is None:
            self._chain = StabilizerChain([g.img for g in self.generators], self.degree)
        return self._chain

    def order(self) -> int:
        return self.chain.order()

    def __contains__(self, p: Perm) -> bool:
        return p.degree == self.degree and self.chain.contains(p.img)

    def identity(self) -> Perm:
        return Perm.identity(self.degree)

    def raw_elements(self) -> list[tuple]:
        if self._elements is None:
            self._elements = sorted(self.chain.elements())
        return self._elements

    def elements(self) -> list[Perm]:
        return [Perm._raw(e) for e in self.raw_elements()]

    def is_transitive(self) -> bool:
        return len(orbit(0, [g.img for g in self.generators], self.degree)) == self.degree

    def conjugacy_classes(self) -> list[list[tuple]]:
        """Classes as sorted lists of raw tuples; the first entry is the representative."""
        if self._classes is None:
            gens = [g.img for g in self.generators]
            ginv = [_inv(g) for g in gens]
            seen: set[tuple] = set()
            classes = []
            for e in self.raw_elements():
                if e in seen:
                    continue
                cls = {e}
                queue = [e]
                while queue:
                    x = queue.pop()
                    for g, gi in zip(gens, ginv):
                        y = _mul(_mul(gi, x), g)
                        if y not in cls:
                            cls.add(y)
                            queue.append(y)
                seen |= cls
                classes.append(sorted(cls))
            self._classes = classes
        return self._classes

    def centralizer_elements(self, x: tuple) -> list[tuple]:
        return [z for z in self.raw_elements() if _mul(x, z) == _mul(z, x)]

    def __repr__(self):
        return f"PermGroup({self.name or [str(g) for g in self.generators]})"


def orbit(point: int, gens, n: int) -> set[int]:
    seen = {point}
    stack = [point]
    while stack:
        x = stack.pop()
        for g in gens:
            y = g[x]
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def group_order(G: PermGroup) -> int:
    return G.order()


def generated_order(perms, n: int) -> int:
    return StabilizerChain([p.img if isinstance(p, Perm) else p for p in perms], n).order()


def symmetric_group(n: int) -> PermGroup:
    if n <= 1:
        return PermGroup([], degree=max(n, 1), name=f"S{n}")
    gens = [Perm.from_cycles([list(range(1, n + 1))], n), Perm.from_cycles([[1, 2]], n)]
    return PermGroup(gens, name=f"S{n}")


def alternating_group(n: int) -> PermGroup:
    if n <= 2:
        return PermGroup([], degree=max(n, 1), name=f"A{n}")
    gens = [Perm.from_cycles([[1, 2, k]], n) for k in range(3, n + 1)]
    return PermGroup(gens, name=f"A{n}")


def cyclic_group(n: int) -> PermGroup:
    if n == 1:
        return PermGroup([], degree=1, name="C1")
    return PermGroup([Perm.from_cycles([list(range(1, n + 1))], n)], name=f"C{n}")


def dihedral_group(n: int) -> PermGroup:
    """Symmetries of the n-gon, order 2n."""
    rot = Perm.from_cycles([list(range(1, n + 1))], n)
    refl = Perm([(-i) % n for i in range(n)])
    return PermGroup([rot, refl], name=f"D{n}")


def trivial_group(n: int = 1) -> PermGroup:
    return PermGroup([], degree=n, name="1")


def named_group(text: str) -> PermGroup:
    """``A7``, ``S5``, ``C3``, ``D4``, ``1``, or generators ``"(1,2,3);(1,2)"``."""
    t = text.strip()
    m = re.fullmatch(r"([ASCD])(\d+)", t)
    if m:
        kind, n = m.group(1), int(m.group(2))
        return {"A": alternating_group, "S": symmetric_group,
                "C": cyclic_group, "D": dihedral_group}[kind](n)
    if t in ("1", "trivial"):
        return trivial_group()
    gens = parse_perm_list(t)
    return PermGroup(gens, name=t)


# -- spherical systems -----------------------------------------------------


@dataclass(frozen=True)
class SphericalTriple:
    a1: Perm
    a2: Perm
    a3: Perm

    def __post_init__(self):
        if not (self.a1 * self.a2 * self.a3).is_identity():
            raise ValueError("product a1*a2*a3 is not the identity")

    @classmethod
    def from_pair(cls, a1: Perm, a2: Perm) -> SphericalTriple:
        return cls(a1, a2, (a1 * a2).inverse())

    def as_tuple(self) -> tuple[Perm, Perm, Perm]:
        return (self.a1, self.a2, self.a3)

    def raw(self) -> tuple[tuple, tuple, tuple]:
        return (self.a1.img, self.a2.img, self.a3.img)

    def orders(self) -> tuple[int, int, int]:
        return (self.a1.order(), self.a2.order(), self.a3.order())

    def signature(self) -> tuple[int, ...]:
        return tuple(sorted(self.orders()))

    def generated_order(self) -> int:
        return generated_order([self.a1, self.a2], self.a1.degree)

    def conj(self, c: Perm) -> SphericalTriple:
        return SphericalTriple(self.a1.conj(c), self.a2.conj(c), self.a3.conj(c))

    def __str__(self):
        return f"({self.a1}, {self.a2}, {self.a3})"

    def to_json(self) -> list[str]:
        return [str(self.a1), str(self.a2), str(self.a3)]


def _triple_from_raw(t) -> SphericalTriple:
    return SphericalTriple(*(Perm._raw(x) for x in t))


def canonical_relabel(perms, start: int):
    """Relabel points by BFS order from ``start`` under ``perms``.

    Returns the relabeled tuple and the relabeling as a list, or ``None`` if
    ``start`` does not reach every point.
    """
    n = len(perms[0])
    label = [-1] * n
    label[start] = 0
    order = [start]
    k = 0
    while k < len(order):
        x = order[k]
        k += 1
        for p in perms:
            y = p[x]
            if label[y] < 0:
                label[y] = len(order)
                order.append(y)
    if len(order) < n:
        return None
    out = []
    for p in perms:
        q = [0] * n
        for x in range(n):
            q[label[x]] = label[p[x]]
        out.append(tuple(q))
    return tuple(out), label


def canonical_form(perms) -> tuple[tuple, int]:
    """Canonical representative of a transitive tuple under conjugation in S_n.

    Returns ``(form, automorphisms)`` where ``automorphisms`` is the order of
    the centralizer in S_n of the tuple.
    """
    raw = [p.img if isinstance(p, Perm) else p for p in perms]
    best = None
    count = 0
    for s in range(len(raw[0])):
        res = canonical_relabel(raw, s)
        if res is None:
            raise ValueError("canonical form needs a transitive tuple")
        form = res[0]
        if best is None or form < best:
            best, count = form, 1
        elif form == best:
            count += 1
    return best, count


def simultaneous_conjugator(t1, t2, ambient: PermGroup | None = None) -> Perm | None:
    """Some c in ``ambient`` with c^-1 t1[i] c == t2[i] for all i, else None.

    Backtracking over images of points: fixing c on one point of an orbit of
    <t1> determines c on the whole orbit (because (x a) c == (x c) b).
    ``ambient`` defaults to the full symmetric group.
    """
    t1, t2 = list(t1), list(t2)
    if len(t1) != len(t2):
        raise ValueError("tuples of different lengths")
    if not t1:
        return Perm.identity(ambient.degree) if ambient else None
    n = t1[0].degree
    if any(p.degree != n for p in t1 + t2):
        raise ValueError("permutations of different degrees")
    if any(cycle_type(a) != cycle_type(b) for a, b in zip(t1, t2)):
        return None
    A = [p.img for p in t1]
    B = [p.img for p in t2]
    Ainv = [_inv(a) for a in A]
    Binv = [_inv(b) for b in B]
    # orbits of <t1>, biggest first to cut the search early
    reps = []
    covered = set()
    for x in range(n):
        if x not in covered:
            o = orbit(x, A + Ainv, n)
            covered |= o
            reps.append((len(o), x))
    reps.sort(key=lambda r: -r[0])
    gens_pairs = list(zip(A, B)) + list(zip(Ainv, Binv))

    def extend(c, used, x, y):
        # set c[x] = y and propagate; return new (c, used) or None on conflict
        c = dict(c)
        used = set(used)
        stack = [(x, y)]
        while stack:
            u, v = stack.pop()
            if u in c:
                if c[u] != v:
                    return None
                continue
            if v in used:
                return None
            c[u] = v
            used.add(v)
            for a, b in gens_pairs:
                stack.append((a[u], b[v]))
        return c, used

    def search(i, c, used):
        if i == len(reps):
            perm = Perm([c[x] for x in range(n)])
            if ambient is None or perm in ambient:
                return perm
            return None
        size, x = reps[i]
        if x in c:
            return search(i + 1, c, used)
        for y in range(n):
            if y in used:
                continue
            res = extend(c, used, x, y)
            if res is None:
                continue
            found = search(i + 1, *res)
            if found is not None:
                return found
        return None

    return search(0, {}, set())


def _elements_of_order(G: PermGroup, k: int) -> list[tuple]:
    return [e for e in G.raw_elements() if _order(e) == k]


def _canonical_under(x: tuple, centralizer: list[tuple]) -> tuple:
    return min(_mul(_mul(_inv(z), x), z) for z in centralizer)


def enumerate_spherical(G: PermGroup, signature) -> list[SphericalTriple]:
    """Generating spherical triples of G with the given order multiset.

    One representative per simultaneous G-conjugacy class; all orderings of
    the signature are included.  a1 runs over class representatives and is
    kept fixed; a2 is then normalized under the centralizer of a1.
    """
    sig = tuple(sorted(signature))
    if len(sig) != 3:
        raise ValueError("signature must have three entries")
    order = G.order()
    n = G.degree
    transitive = G.is_transitive()
    out = []
    for o1, o2, o3 in sorted(set(permutations(sig))):
        cands2 = _elements_of_order(G, o2)
        for cls in G.conjugacy_classes():
            c = cls[0]
            if _order(c) != o1:
                continue
            cent = G.centralizer_elements(c)
            seen = set()
            for a2 in cands2:
                a3 = _inv(_mul(c, a2))
                if _order(a3) != o3:
                    continue
                key = _canonical_under(a2, cent)
                if key in seen:
                    continue
                if transitive and len(orbit(0, (c, a2), n)) < n:
                    continue
                if StabilizerChain([c, a2], n).order() != order:
                    continue
                seen.add(key)
                out.append(SphericalTriple(Perm._raw(c), Perm._raw(key),
                                           Perm._raw(_inv(_mul(c, key)))))
    return out


def braid_moves(t):
    """Images of a raw triple under the two Hurwitz moves and their inverses."""
    a1, a2, a3 = t
    i1, i2, i3 = _inv(a1), _inv(a2), _inv(a3)
    return (
        (a2, _mul(_mul(i2, a1), a2), a3),
        (_mul(_mul(a1, a2), i1), a1, a3),
        (a1, a3, _mul(_mul(i3, a2), a3)),
        (a1, _mul(_mul(a2, a3), i2), a2),
    )


@dataclass
class HurwitzOrbit:
    representative: SphericalTriple
    size: int
    members: list[int]


def hurwitz_classes(triples, mode: str = "braid+conj", group: PermGroup | None = None,
                    extra_conjugators=()) -> list[HurwitzOrbit]:
    """Partition ``triples`` into Hurwitz orbits.

    ``mode`` is ``"braid"`` or ``"braid+conj"``; the latter also closes under
    simultaneous conjugation by the generators of ``group`` (default: the
    group generated by the first triple).  ``extra_conjugators`` adds further
    conjugating permutations, e.g. generators of S_n for classification up to
    outer automorphisms.  ``size`` counts all triples in the closed orbit,
    ``members`` lists indices into ``triples``.
    """
    triples = list(triples)
    if mode not in ("braid", "braid+conj"):
        raise ValueError(f"unknown mode {mode!r}")
    conj = []
    if mode == "braid+conj":
        if group is None and triples:
            group = PermGroup([triples[0].a1, triples[0].a2])
        if group is not None:
            conj = [g.img for g in group.generators]
    conj += [g.img for g in extra_conjugators]
    conj_pairs = [(_inv(c), c) for c in conj]
    index = {t.raw(): i for i, t in enumerate(triples)}
    done = [False] * len(triples)
    orbits = []
    for i, t in enumerate(triples):
        if done[i]:
            continue
        start = t.raw()
        seen = {start}
        queue = deque([start])
        members = []
        while queue:
            x = queue.popleft()
            j = index.get(x)
            if j is not None:
                done[j] = True
                members.append(j)
            nbrs = list(braid_moves(x))
            for ci, c in conj_pairs:
                nbrs.append(tuple(_mul(_mul(ci, a), c) for a in x))
            for y in nbrs:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        orbits.append(HurwitzOrbit(t, len(seen), sorted(members)))
    return orbits


def all_conjugates(triples, G: PermGroup) -> list[SphericalTriple]:
    """Every G-conjugate of every triple (duplicates removed)."""
    out = {}
    elems = G.raw_elements()
    for t in triples:
        raw = t.raw()
        for z in elems:
            zi = _inv(z)
            y = tuple(_mul(_mul(zi, a), z) for a in raw)
            out.setdefault(y, None)
    return [_triple_from_raw(t) for t in out]


def perms_of_cycle_type(n: int, ctype) -> list[Perm]:
    """All permutations of n points with the given cycle type (fixed points included)."""
    if sum(ctype) != n:
        raise ValueError("cycle type must sum to the degree")
    out = []

    def rec(remaining: tuple, lengths: tuple, img: list):
        if not remaining:
            out.append(Perm._raw(tuple(img)))
            return
        # the smallest remaining point opens the next cycle
        first, rest = remaining[0], remaining[1:]
        for k in sorted(set(lengths)):
            left_lengths = list(lengths)
            left_lengths.remove(k)
            for others in permutations(rest, k - 1):
                cyc = (first,) + others
                for i, x in enumerate(cyc):
                    img[x] = cyc[(i + 1) % k]
                rec(tuple(x for x in rest if x not in others), tuple(left_lengths), img)
        img[first] = first

    rec(tuple(range(n)), tuple(ctype), list(range(n)))
    return out


def count_of_cycle_type(n: int, ctype) -> int:
    """n! / prod(k^m_k m_k!), the size of the S_n class."""
    denom = 1
    for k in set(ctype):
        m = list(ctype).count(k)
        denom *= k ** m * factorial(m)
    return factorial(n) // denom
