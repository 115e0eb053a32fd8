"""Finite monoids by multiplication table, their homomorphisms and left actions."""

from dataclasses import dataclass, field
from itertools import permutations, product

from . import _backend
from .errors import AxiomError, CapacityError, RepresentationError

MAX_MONOID = 12


@dataclass(frozen=True)
class Monoid:
    size: int
    table: tuple
    identity: int
    labels: tuple = field(default=(), compare=False)

    def mul(self, a, b):
        return self.table[a][b]

    def elements(self):
        return range(self.size)

    def prod(self, *xs):
        r = self.identity
        for x in xs:
            r = self.table[r][x]
        return r

    def to_json(self):
        return {"size": self.size, "identity": self.identity, "table": [list(r) for r in self.table]}


def _square(table):
    rows = [tuple(int(v) for v in r) for r in table]
    n = len(rows)
    if n == 0:
        raise RepresentationError("a monoid needs at least one element")
    for i, r in enumerate(rows):
        if len(r) != n:
            raise RepresentationError(f"row {i} has length {len(r)}, expected {n}")
        for v in r:
            if not 0 <= v < n:
                raise RepresentationError(f"entry {v} in row {i} is out of range")
    return tuple(rows)


def validate_monoid(table, identity, labels=()):
    t = _square(table)
    n = len(t)
    if not 0 <= identity < n:
        raise RepresentationError(f"identity {identity} out of range")
    for a in range(n):
        if t[identity][a] != a:
            raise AxiomError("left-unit", (a,))
        if t[a][identity] != a:
            raise AxiomError("right-unit", (a,))
    for a, b, c in product(range(n), repeat=3):
        if t[t[a][b]][c] != t[a][t[b][c]]:
            raise AxiomError("associativity", (a, b, c))
    return Monoid(n, t, identity, tuple(labels))


def trivial_monoid():
    return Monoid(1, ((0,),), 0)


def cyclic_group(n):
    return validate_monoid([[(a + b) % n for b in range(n)] for a in range(n)], 0)


def endofunction_monoid(n, order="diagrammatic"):
    """All maps ``{0..n-1} -> {0..n-1}`` in lexicographic order.

    ``order="diagrammatic"``: ``mn`` is "first m, then n".
    ``order="applicative"``: ``mn`` is ``m`` after ``n``.
    Labels are the maps as tuples.
    """
    if order not in ("diagrammatic", "applicative"):
        raise RepresentationError(f"unknown composition order {order!r}")
    funcs = list(product(range(n), repeat=n))
    if len(funcs) > MAX_MONOID ** 2:
        raise CapacityError("endofunction monoid size", len(funcs), MAX_MONOID ** 2)
    index = {f: i for i, f in enumerate(funcs)}
    if order == "diagrammatic":
        table = [[index[tuple(g[f[x]] for x in range(n))] for g in funcs] for f in funcs]
    else:
        table = [[index[tuple(f[g[x]] for x in range(n))] for g in funcs] for f in funcs]
    return Monoid(len(funcs), tuple(map(tuple, table)), index[tuple(range(n))], tuple(funcs))


@dataclass(frozen=True)
class MAction:
    monoid: Monoid
    carrier: int
    table: tuple

    def act(self, m, x):
        return self.table[m][x]

    def to_json(self):
        return {"monoid": self.monoid.to_json(), "carrier": self.carrier,
                "table": [list(r) for r in self.table]}


def validate_maction(M, table, carrier=None):
    rows = [tuple(int(v) for v in r) for r in table]
    if len(rows) != M.size:
        raise RepresentationError(f"action table has {len(rows)} rows, monoid has {M.size}")
    n = len(rows[0]) if carrier is None else carrier
    for m, r in enumerate(rows):
        if len(r) != n or any(not 0 <= v < n for v in r):
            raise RepresentationError(f"action row {m} is not a map on {n} points")
    for x in range(n):
        if rows[M.identity][x] != x:
            raise AxiomError("action-unit", (x,))
    for m, k in product(range(M.size), repeat=2):
        mk = M.table[m][k]
        for x in range(n):
            if rows[mk][x] != rows[m][rows[k][x]]:
                raise AxiomError("action-associativity", (m, k, x))
    return MAction(M, n, tuple(rows))


def regular_action(M):
    """``M`` acting on itself by left multiplication."""
    return MAction(M, M.size, M.table)


def trivial_action(M, carrier=1):
    return MAction(M, carrier, tuple(tuple(range(carrier)) for _ in M.elements()))


def tautological_action(n):
    """Endofunctions acting on points; a left action for the applicative order."""
    M = endofunction_monoid(n, "applicative")
    return M, MAction(M, n, tuple(tuple(f) for f in M.labels))


def curry(action):
    """``m |-> (x |-> m.x)`` as a tuple of maps."""
    return [tuple(action.table[m]) for m in action.monoid.elements()]


@dataclass(frozen=True)
class MonHom:
    source: Monoid
    target: Monoid
    table: tuple

    def __call__(self, m):
        return self.table[m]


def validate_monoid_hom(M, N, table):
    table = tuple(table)
    if len(table) != M.size or any(not 0 <= v < N.size for v in table):
        raise RepresentationError("hom table has wrong shape")
    if table[M.identity] != N.identity:
        raise AxiomError("preserves-identity", (M.identity,))
    for a, b in product(range(M.size), repeat=2):
        if table[M.table[a][b]] != N.table[table[a]][table[b]]:
            raise AxiomError("preserves-multiplication", (a, b))
    return MonHom(M, N, table)


def compose_homs(f, g):
    """``g`` after ``f``."""
    return MonHom(f.source, g.target, tuple(g.table[f.table[m]] for m in f.source.elements()))


def generators(M):
    """A small generating set, chosen greedily in index order, with for each
    element a word over the generators reaching it."""
    words = {M.identity: ()}
    gens = []
    for a in M.elements():
        if a in words:
            continue
        gens.append(a)
        frontier = list(words.items())
        while frontier:
            nxt = []
            for x, w in frontier:
                for g in gens:
                    y = M.table[x][g]
                    if y not in words:
                        words[y] = w + (g,)
                        nxt.append((y, words[y]))
            frontier = nxt
    return gens, words


def _homs_by_generators(M, N, gen_images):
    gens, words = generators(M)
    out = []
    for imgs in gen_images(gens):
        img = dict(zip(gens, imgs))
        table = [0] * M.size
        for a, w in words.items():
            table[a] = N.prod(*[img[g] for g in w])
        try:
            out.append(validate_monoid_hom(M, N, table))
        except AxiomError:
            pass
    return sorted(out, key=lambda f: f.table)


def enumerate_monoid_homs(M, N, max_size=MAX_MONOID):
    if M.size > max_size:
        raise CapacityError("monoid size", M.size, max_size)
    if N.size > max_size ** 2:
        raise CapacityError("target monoid size", N.size, max_size ** 2)
    return _homs_by_generators(M, N, lambda gens: product(range(N.size), repeat=len(gens)))


def monoid_isomorphisms(M, N):
    if M.size != N.size:
        return []
    homs = _homs_by_generators(M, N, lambda gens: permutations(range(N.size), len(gens)))
    return [f for f in homs if len(set(f.table)) == N.size]


def enumerate_monoids(n, up_to_iso=True):
    """All monoid tables on ``n`` elements with identity 0."""
    if n > 4:
        raise CapacityError("monoid enumeration size", n, 4)
    free = [(a, b) for a in range(1, n) for b in range(1, n)]
    found, seen = [], set()
    for vals in product(range(n), repeat=len(free)):
        t = [[b if a == 0 else (a if b == 0 else 0) for b in range(n)] for a in range(n)]
        for (a, b), v in zip(free, vals):
            t[a][b] = v
        try:
            M = validate_monoid(t, 0)
        except AxiomError:
            continue
        if up_to_iso:
            key = min(_relabel(M.table, (0,) + p) for p in permutations(range(1, n)))
            if key in seen:
                continue
            seen.add(key)
        found.append(M)
    return found


def _relabel(table, perm):
    n = len(table)
    inv = [0] * n
    for i, p in enumerate(perm):
        inv[p] = i
    return tuple(tuple(perm[table[inv[a]][inv[b]]] for b in range(n)) for a in range(n))


def action_product(X, Y):
    """Componentwise action on ``X x Y``; the pair (x, y) has index ``x*|Y| + y``."""
    M = X.monoid
    t = tuple(tuple(X.table[m][x] * Y.carrier + Y.table[m][y] for x in range(X.carrier) for y in range(Y.carrier))
              for m in M.elements())
    return MAction(M, X.carrier * Y.carrier, t)


def enumerate_maction_homs(X, Y):
    M = X.monoid
    return _backend.search_homs(X.carrier, Y.carrier, [], [], [X.table[m] for m in M.elements()],
                                [Y.table[m] for m in M.elements()])


@dataclass
class MSetExponential:
    """``Z^Y``: M-set maps ``M x Y -> Z`` with ``(m f)(n, y) = f(nm, y)``."""

    action: MAction
    homs: list
    y_size: int

    def ev(self, f, y):
        return self.homs[f][self.action.monoid.identity * self.y_size + y]


def mset_exponential(Y, Z):
    M = Y.monoid
    MY = action_product(regular_action(M), Y)
    homs = enumerate_maction_homs(MY, Z)
    index = {h: i for i, h in enumerate(homs)}
    ny = Y.carrier
    table = []
    for m in M.elements():
        row = []
        for h in homs:
            g = tuple(h[M.table[n][m] * ny + y] for n in M.elements() for y in range(ny))
            row.append(index[g])
        table.append(tuple(row))
    return MSetExponential(validate_maction(M, table, len(homs)), homs, ny)
