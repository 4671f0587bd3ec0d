"""Finitely presented groups: polygonal groups, the diagonal-preimage subgroup,
Reidemeister-Schreier rewriting and abelianization.

Words are tuples of nonzero ints: ``k`` is generator ``x_k`` (1-based) and
``-k`` its inverse.  Cosets are numbered from 0 with the subgroup itself as
coset 0; generators act on cosets from the right.
"""

from __future__ import annotations

import json
import random
from collections import deque
from dataclasses import dataclass

from .perm import Perm, PermGroup, SphericalTriple, _inv, _mul
from .smith import AbelianInvariants, sparse_invariants


def free_reduce(word) -> tuple[int, ...]:
    out: list[int] = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(word) -> tuple[int, ...]:
    w = list(free_reduce(word))
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    return tuple(w)


def invert_word(word) -> tuple[int, ...]:
    return tuple(-x for x in reversed(word))


@dataclass(frozen=True)
class Presentation:
    generator_count: int
    relators: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for r in self.relators:
            for x in r:
                if x == 0 or abs(x) > self.generator_count:
                    raise ValueError(f"relator letter {x} out of range")
        object.__setattr__(self, "relators", tuple(free_reduce(r) for r in self.relators))

    def to_json(self) -> dict:
        return {"generators": self.generator_count, "relators": [list(r) for r in self.relators]}

    @classmethod
    def from_json(cls, data: dict) -> Presentation:
        return cls(data["generators"], tuple(tuple(r) for r in data["relators"]))

    def relation_rows(self) -> list[dict[int, int]]:
        """Exponent-sum rows (0-based columns) of the abelianized relators."""
        rows = []
        for r in self.relators:
            d: dict[int, int] = {}
            for x in r:
                k = abs(x) - 1
                d[k] = d.get(k, 0) + (1 if x > 0 else -1)
            rows.append({k: v for k, v in d.items() if v})
        return rows

    def sparse_triplets(self) -> str:
        """Relation matrix as ``row col value`` lines, header ``rows cols nnz``."""
        rows = self.relation_rows()
        lines = [f"{i} {c} {v}" for i, r in enumerate(rows) for c, v in sorted(r.items())]
        return "\n".join([f"{len(rows)} {self.generator_count} {len(lines)}"] + lines) + "\n"


def polygonal_presentation(orders) -> Presentation:
    """<x_1..x_{n-1} | x_i^{r_i}, (x_1 ... x_{n-1})^{r_n}>."""
    orders = [int(r) for r in orders]
    if len(orders) < 2 or any(r < 2 for r in orders):
        raise ValueError("need at least two orders, each at least 2")
    k = len(orders) - 1
    rels = [(i + 1,) * r for i, r in enumerate(orders[:-1])]
    rels.append(tuple(range(1, k + 1)) * orders[-1])
    return Presentation(k, tuple(rels))


def surface_presentation(genus: int) -> Presentation:
    """<a_1, b_1, ..., a_g, b_g | prod [a_i, b_i]>."""
    word = []
    for i in range(genus):
        a, b = 2 * i + 1, 2 * i + 2
        word += [a, b, -a, -b]
    return Presentation(2 * genus, (tuple(word),) if genus else ())


def direct_product(p: Presentation, q: Presentation) -> Presentation:
    """Generators of q are shifted after those of p; all cross commutators added."""
    m = p.generator_count
    shifted = tuple(tuple(x + m if x > 0 else x - m for x in r) for r in q.relators)
    comms = tuple(
        (-i, -(m + j), i, m + j)
        for i in range(1, m + 1)
        for j in range(1, q.generator_count + 1)
    )
    return Presentation(m + q.generator_count, p.relators + shifted + comms)


@dataclass(frozen=True)
class FiniteImage:
    target: PermGroup
    images: tuple[Perm, ...]

    def evaluate(self, word) -> Perm:
        out = self.target.identity()
        for x in word:
            img = self.images[abs(x) - 1]
            out = out * (img if x > 0 else img.inverse())
        return out

    def verify(self, pres: Presentation) -> None:
        if len(self.images) != pres.generator_count:
            raise ValueError("one image per generator required")
        for r in pres.relators:
            if not self.evaluate(r).is_identity():
                raise ValueError(f"relator {r} does not map to the identity")


@dataclass
class CosetTable:
    coset_count: int
    action: list[list[int]]  # action[gen][coset] -> coset
    labels: list[Perm]

    def __post_init__(self):
        self.inverse_action = []
        for row in self.action:
            inv = [0] * len(row)
            for i, j in enumerate(row):
                inv[j] = i
            self.inverse_action.append(inv)

    def act(self, coset: int, letter: int) -> int:
        k = abs(letter) - 1
        return self.action[k][coset] if letter > 0 else self.inverse_action[k][coset]

    def trace(self, coset: int, word) -> int:
        for x in word:
            coset = self.act(coset, x)
        return coset

    def verify_relators(self, pres: Presentation) -> int:
        """Check every relator from every coset; returns the number of relators."""
        for r in pres.relators:
            for c in range(self.coset_count):
                if self.trace(c, r) != c:
                    raise ValueError(f"relator {r} acts nontrivially on coset {c}")
        return len(pres.relators)

    def is_transitive(self) -> bool:
        seen = {0}
        stack = [0]
        while stack:
            c = stack.pop()
            for row in self.action + self.inverse_action:
                d = row[c]
                if d not in seen:
                    seen.add(d)
                    stack.append(d)
        return len(seen) == self.coset_count


def triangle_pair_image(G: PermGroup, t1: SphericalTriple, t2: SphericalTriple):
    """Presentation of T_r x T_s and the map to G x G given by the two triples.

    Returns ``(presentation, first_images, second_images)``.
    """
    pr = polygonal_presentation(t1.orders())
    ps = polygonal_presentation(t2.orders())
    return direct_product(pr, ps), (t1.a1, t1.a2), (t2.a1, t2.a2)


def diagonal_coset_table(pres: Presentation, G: PermGroup, first, second) -> CosetTable:
    """Cosets of H = preimage of the diagonal of G x G, labeled by g1^-1 g2.

    ``first`` and ``second`` are the images in G of the generators of the two
    factors (first factor's generators come first in ``pres``).
    """
    order = G.order()
    for imgs in (first, second):
        if PermGroup(list(imgs), degree=G.degree).order() != order or any(
            p not in G for p in imgs
        ):
            raise ValueError("markings do not generate")
    elems = G.raw_elements()
    index = {e: i for i, e in enumerate(elems)}
    ident = tuple(range(G.degree))
    # put the identity (the subgroup H itself) at coset 0
    order_idx = [index[ident]] + [i for i in range(len(elems)) if elems[i] != ident]
    elems = [elems[i] for i in order_idx]
    index = {e: i for i, e in enumerate(elems)}
    action = []
    for p in first:
        pinv = _inv(p.img)
        action.append([index[_mul(pinv, g)] for g in elems])
    for p in second:
        action.append([index[_mul(g, p.img)] for g in elems])
    if len(action) != pres.generator_count:
        raise ValueError("image count does not match the presentation")
    table = CosetTable(len(elems), action, [Perm._raw(e) for e in elems])
    table.verify_relators(pres)
    return table


def regular_coset_table(pres: Presentation, image: FiniteImage) -> CosetTable:
    """Cosets of the kernel of a surjection onto ``image.target``: g -> g phi(x)."""
    G = image.target
    if PermGroup(list(image.images), degree=G.degree).order() != G.order():
        raise ValueError("markings do not generate")
    ident = tuple(range(G.degree))
    elems = [ident] + [e for e in G.raw_elements() if e != ident]
    index = {e: i for i, e in enumerate(elems)}
    action = [[index[_mul(g, p.img)] for g in elems] for p in image.images]
    table = CosetTable(len(elems), action, [Perm._raw(e) for e in elems])
    table.verify_relators(pres)
    return table


@dataclass
class SchreierData:
    presentation: Presentation
    transversal: list[tuple[int, ...]]  # word representing each coset
    generators: list[tuple[int, int]]  # (coset, ambient generator) per Schreier generator

    def generator_word(self, i: int) -> tuple[int, ...]:
        """rep(c) x rep(c.x)^-1 in the ambient group."""
        c, k = self.generators[i]
        return free_reduce(self.transversal[c] + (k,) + invert_word(self.transversal[self._target(c, k)]))

    _table: CosetTable | None = None

    def _target(self, c, k):
        return self._table.act(c, k)


def reidemeister_schreier(table: CosetTable, pres: Presentation) -> SchreierData:
    """Presentation of the subgroup (coset 0) from a BFS Schreier transversal."""
    ngen = pres.generator_count
    n = table.coset_count
    transversal: list[tuple[int, ...] | None] = [None] * n
    transversal[0] = ()
    tree: set[tuple[int, int]] = set()  # (coset, generator) pairs whose Schreier generator is trivial
    queue = deque([0])
    letters = list(range(1, ngen + 1)) + [-k for k in range(1, ngen + 1)]
    while queue:
        c = queue.popleft()
        for x in letters:
            d = table.act(c, x)
            if transversal[d] is None:
                transversal[d] = transversal[c] + (x,)
                tree.add((c, x) if x > 0 else (d, -x))
                queue.append(d)
    if any(t is None for t in transversal):
        raise ValueError("coset table is not transitive")
    gen_index: dict[tuple[int, int], int] = {}
    gens: list[tuple[int, int]] = []
    for c in range(n):
        for k in range(1, ngen + 1):
            if (c, k) not in tree:
                gen_index[(c, k)] = len(gens) + 1
                gens.append((c, k))

    def rewrite(c: int, word) -> tuple[int, ...]:
        out = []
        for x in word:
            if x > 0:
                s = gen_index.get((c, x))
                if s:
                    out.append(s)
                c = table.action[x - 1][c]
            else:
                c = table.inverse_action[-x - 1][c]
                s = gen_index.get((c, -x))
                if s:
                    out.append(-s)
        return free_reduce(out)

    rels = tuple(rewrite(c, r) for r in pres.relators for c in range(n))
    data = SchreierData(Presentation(len(gens), rels), list(transversal), gens)
    data._table = table
    return data


def abelianization(pres: Presentation) -> AbelianInvariants:
    return sparse_invariants(pres.relation_rows(), pres.generator_count)


def evaluate_pair(word, first, second) -> tuple[Perm, Perm]:
    """Image in G x G of a word of T_r x T_s."""
    m = len(first)
    g1 = first[0].inverse() * first[0]
    g2 = g1
    for x in word:
        k = abs(x) - 1
        if k < m:
            p = first[k]
            g1 = g1 * (p if x > 0 else p.inverse())
        else:
            p = second[k - m]
            g2 = g2 * (p if x > 0 else p.inverse())
    return g1, g2


def check_schreier_in_diagonal(data: SchreierData, first, second, sample: int = 100,
                               seed: int = 0) -> int:
    """Map a random sample of Schreier generators to G x G; each must be diagonal."""
    rng = random.Random(seed)
    n = len(data.generators)
    picks = rng.sample(range(n), min(sample, n))
    for i in picks:
        g1, g2 = evaluate_pair(data.generator_word(i), first, second)
        if g1 != g2:
            raise ValueError(f"Schreier generator {i + 1} does not map into the diagonal")
    return len(picks)


@dataclass
class Pi1Result:
    ambient: Presentation
    table: CosetTable
    schreier: SchreierData

    @property
    def presentation(self) -> Presentation:
        return self.schreier.presentation


def pi1_surface(structure) -> Pi1Result:
    """pi_1((C1 x C2)/G) as the preimage of the diagonal in T_r x T_s."""
    G = structure.group
    pres, first, second = triangle_pair_image(G, structure.triple1, structure.triple2)
    table = diagonal_coset_table(pres, G, first, second)
    return Pi1Result(pres, table, reidemeister_schreier(table, pres))


def pi1_curve_kernel(G: PermGroup, t: SphericalTriple) -> SchreierData:
    """Kernel of T_r -> G: the fundamental group of the triangle curve."""
    pres = polygonal_presentation(t.orders())
    table = regular_coset_table(pres, FiniteImage(G, (t.a1, t.a2)))
    return reidemeister_schreier(table, pres)


def dumps_presentation(pres: Presentation) -> str:
    return json.dumps(pres.to_json())
