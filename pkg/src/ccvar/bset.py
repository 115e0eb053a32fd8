"""B-sets: ternary actions ``b(x,y)`` of a finite Boolean algebra.

A B-set is stored as its action table ``act[b][x][y]``.  The equivalent
presentation is a family of equivalence relations, ``x ~_b y`` iff
``b(x,y) = y``, each stored as class-minimum labels (``labels[b][x]`` is the
least element equivalent to ``x``).
"""

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product

import numpy as np

from . import _backend
from .balg import BooleanAlgebra, Partition, all_partitions, validate_partition
from .certificate import Certificate
from .errors import AxiomError, CapacityError, InvariantViolation, RepresentationError

BSET_AXIOMS = ("b(x,x)=x", "1(x,y)=x", "b'(x,y)=b(y,x)", "(b&c)(x,y)=b(c(x,y),y)",
               "b(b(x,y),z)=b(x,z)", "b(x,b(y,z))=b(x,z)")

MAX_CARRIER = 4096


@dataclass(frozen=True, eq=False)
class BSet:
    algebra: BooleanAlgebra
    carrier: int
    action: tuple

    def act(self, b, x, y):
        return self.action[b][x][y]

    def eq(self, b, x, y):
        return self.action[b][x][y] == y

    @cached_property
    def labels(self):
        return tuple(_labels_of(row, self.carrier) for row in self.action)

    def __eq__(self, other):
        return isinstance(other, BSet) and (self.algebra, self.carrier, self.action) == \
            (other.algebra, other.carrier, other.action)

    def __hash__(self):
        return hash((self.algebra, self.carrier, self.action))

    def to_json(self):
        return {"boolean": {"atoms": self.algebra.atoms}, "carrier": self.carrier,
                "action": [[list(r) for r in t] for t in self.action]}


def _labels_of(row, n):
    # x ~ y iff row[x][y] == y; classes via the least member
    lab = [-1] * n
    for x in range(n):
        if lab[x] < 0:
            for y in range(x, n):
                if lab[y] < 0 and row[x][y] == y:
                    lab[y] = x
    return tuple(lab)


def _normalise_table(B, table):
    nb = B.size
    if len(table) != nb:
        raise RepresentationError(f"action table has {len(table)} layers, algebra has {nb} elements")
    n = len(table[0])
    if n == 0:
        raise RepresentationError("empty carrier")
    if n > MAX_CARRIER:
        raise CapacityError("B-set carrier", n, MAX_CARRIER)
    out = []
    for b, layer in enumerate(table):
        if len(layer) != n:
            raise RepresentationError(f"layer {b} has {len(layer)} rows, expected {n}")
        rows = []
        for x, r in enumerate(layer):
            r = tuple(int(v) for v in r)
            if len(r) != n or any(not 0 <= v < n for v in r):
                raise RepresentationError(f"row ({b},{x}) is not a map into the carrier")
            rows.append(r)
        out.append(tuple(rows))
    return tuple(out)


def bset_failure(B, action):
    """First failing law as ``(axiom, (b, c, x, y, z))`` or ``None``; unused slots are ``None``."""
    res = _backend.bset_axiom_failure(action, B.top)
    if res is None:
        return None
    k, *wit = res
    return BSET_AXIOMS[k], tuple(None if v < 0 else v for v in wit)


def bset_law_holds(B, action, axiom, witness):
    """Re-evaluate one law at one witness; used to replay failures."""
    b, c, x, y, z = witness
    a = action
    if axiom == BSET_AXIOMS[0]:
        return a[b][x][x] == x
    if axiom == BSET_AXIOMS[1]:
        return a[B.top][x][y] == x
    if axiom == BSET_AXIOMS[2]:
        return a[B.top ^ b][x][y] == a[b][y][x]
    if axiom == BSET_AXIOMS[3]:
        return a[b & c][x][y] == a[b][a[c][x][y]][y]
    if axiom == BSET_AXIOMS[4]:
        return a[b][a[b][x][y]][z] == a[b][x][z]
    if axiom == BSET_AXIOMS[5]:
        return a[b][x][a[b][y][z]] == a[b][x][z]
    raise RepresentationError(f"unknown axiom {axiom!r}")


def bset_certificate(B, table):
    """Per-law instance counts and witnesses, evaluated with numpy."""
    action = _normalise_table(B, table)
    cert = Certificate("bset")
    A = np.asarray(action, dtype=np.int64)
    nb, n = A.shape[0], A.shape[1]
    if n > 128:
        fail = bset_failure(B, action)
        for tag in BSET_AXIOMS:
            cert.tally(tag, 1, [fail[1]] if fail and fail[0] == tag else [])
        return cert
    xs = np.arange(n)
    neg = [B.top ^ b for b in range(nb)]

    def tally(tag, ok, wit):
        bad = np.argwhere(~ok)
        cert.tally(tag, ok.size, [wit(*map(int, w)) for w in bad[:cert.max_witnesses]])

    tally(BSET_AXIOMS[0], A[:, xs, xs] == xs, lambda b, x: (b, None, x, None, None))
    tally(BSET_AXIOMS[1], A[B.top] == xs[:, None], lambda x, y: (B.top, None, x, y, None))
    tally(BSET_AXIOMS[2], A[neg] == A.transpose(0, 2, 1), lambda b, x, y: (b, None, x, y, None))
    meet = np.array([[b & c for c in range(nb)] for b in range(nb)])
    ok3 = np.stack([A[meet[b]] == A[b][A, xs[None, None, :]] for b in range(nb)])
    tally(BSET_AXIOMS[3], ok3, lambda b, c, x, y: (b, c, x, y, None))
    ok4 = np.stack([A[b][A[b]] == A[b][:, None, :] for b in range(nb)])
    tally(BSET_AXIOMS[4], ok4, lambda b, x, y, z: (b, None, x, y, z))
    ok5 = np.stack([A[b][xs[:, None, None], A[b][None, :, :]] == A[b][:, None, :] for b in range(nb)])
    tally(BSET_AXIOMS[5], ok5, lambda b, x, y, z: (b, None, x, y, z))
    return cert


def validate_bset(B, table):
    action = _normalise_table(B, table)
    fail = bset_failure(B, action)
    if fail:
        raise AxiomError(*fail)
    return BSet(B, len(action[0]), action)


def conditioned_disjunction(B):
    """``B`` acting on its own elements by ``b(c,d) = (b & c) | (b' & d)``."""
    t = tuple(tuple(tuple(B.cond(b, c, d) for d in B.elements()) for c in B.elements()) for b in B.elements())
    return BSet(B, B.size, t)


def terminal_bset(B):
    return BSet(B, 1, tuple(((0,),) for _ in B.elements()))


def bset_product(X, Y):
    """Componentwise structure; ``(x, y)`` has index ``x*|Y| + y``."""
    ny = Y.carrier
    t = tuple(tuple(tuple(X.action[b][x1][x2] * ny + Y.action[b][y1][y2]
                          for x2 in range(X.carrier) for y2 in range(ny))
                    for x1 in range(X.carrier) for y1 in range(ny))
              for b in X.algebra.elements())
    return BSet(X.algebra, X.carrier * ny, t)


# ---------------------------------------------------------------------------
# equivalence-relation presentation


@dataclass(frozen=True)
class EqFamily:
    algebra: BooleanAlgebra
    carrier: int
    rel: tuple  # rel[b] = class-minimum labels

    def eq(self, b, x, y):
        return self.rel[b][x] == self.rel[b][y]

    def blocks(self, b):
        out = {}
        for x, l in enumerate(self.rel[b]):
            out.setdefault(l, []).append(x)
        return list(out.values())

    def to_json(self):
        return {"boolean": {"atoms": self.algebra.atoms}, "carrier": self.carrier,
                "rel": {str(b): self.blocks(b) for b in self.algebra.elements()}}


def eq_family_from_blocks(B, carrier, blocks):
    """``blocks[b]`` is a list of blocks partitioning the carrier."""
    rel = []
    for b in B.elements():
        lab = [-1] * carrier
        for blk in blocks[b]:
            for x in blk:
                if not 0 <= x < carrier or lab[x] >= 0:
                    raise RepresentationError(f"blocks for {b} do not partition the carrier")
                lab[x] = blk[0]
        if min(lab, default=0) < 0:
            raise RepresentationError(f"blocks for {b} do not cover the carrier")
        rel.append(_backend.class_labels(lab, carrier))
    return EqFamily(B, carrier, tuple(tuple(r) for r in rel))


def eq_family_from_keys(B, carrier, key):
    """Relations from a key function: ``x ~_b y`` iff ``key(b, x) == key(b, y)``."""
    rel = tuple(tuple(_backend.class_labels([key(b, x) for x in range(carrier)], carrier))
                for b in B.elements())
    return EqFamily(B, carrier, rel)


def eqs_from_action(X):
    E = EqFamily(X.algebra, X.carrier, X.labels)
    cert = check_eq_family(E)
    if not cert.passed:
        raise InvariantViolation(f"relations of a valid B-set fail {[c.tag for c in cert.failures]}")
    return E


def _first_eq_failure(E):
    B, n, R = E.algebra, E.carrier, E.rel
    for x in range(n):
        for y in range(n):
            if (R[B.top][x] == R[B.top][y]) != (x == y):
                return "one-is-equality", (x, y)
            if R[0][x] != R[0][y]:
                return "zero-is-total", (x, y)
    for b in B.elements():
        for c in B.elements():
            if c & b != c:
                continue
            for x in range(n):
                if R[b][x] != x and R[c][x] != R[c][R[b][x]]:
                    return "downward-closed", (b, c, x, R[b][x])
    for b in B.elements():
        for c in B.elements():
            rb, rc, rj = R[b], R[c], R[b | c]
            for x in range(n):
                for y in range(x + 1, n):
                    if rb[x] == rb[y] and rc[x] == rc[y] and rj[x] != rj[y]:
                        return "join-closed", (b, c, x, y)
    for b in B.elements():
        rb, rn = R[b], R[B.top ^ b]
        pairs = {(rb[z], rn[z]) for z in range(n)}
        for x in range(n):
            for y in range(n):
                if (rb[x], rn[y]) not in pairs:
                    return "glue-exists", (b, x, y)
    return None


def check_eq_family(E, glue_form=True):
    """Certificate for the relation axioms.

    Checks the four-axiom form (downward closure, 1 and 0, join closure, binary
    glueing) and, with ``glue_form``, the equivalent form "downward closure plus
    unique glueing along every partition".  Disagreement between the two is an
    invariant violation.
    """
    B, n, R = E.algebra, E.carrier, E.rel
    cert = Certificate("eq-family")
    fail = _first_eq_failure(E)
    for tag in ("one-is-equality", "zero-is-total", "downward-closed", "join-closed", "glue-exists"):
        cert.record(tag, fail is None or fail[0] != tag, fail[1] if fail and fail[0] == tag else None)
        if fail and fail[0] == tag:
            break
    if glue_form:
        down_ok = not (fail and fail[0] == "downward-closed")
        ok2 = down_ok and _unique_glue_everywhere(E, cert)
        if ok2 != (fail is None):
            raise InvariantViolation("the two axiomatisations of relation families disagree")
    return cert


def _unique_glue_everywhere(E, cert):
    n, R = E.carrier, E.rel
    ok = True
    for P in all_partitions(E.algebra):
        parts = P.parts
        keys = {}
        for z in range(n):
            k = tuple(R[b][z] for b in parts)
            keys[k] = keys.get(k, 0) + 1
        # every tuple of classes must be hit exactly once
        classes = [sorted(set(R[b])) for b in parts]
        for combo in product(*classes):
            good = keys.get(combo, 0) == 1
            cert.record("partition-glue", good, (parts, combo))
            ok &= good
    return ok


def action_from_eqs(E):
    """B-set whose relations are ``E``; raises :class:`AxiomError` naming the
    first failing relation axiom."""
    fail = _first_eq_failure(E)
    if fail:
        raise AxiomError(*fail)
    B, n, R = E.algebra, E.carrier, E.rel
    table = []
    for b in B.elements():
        rb, rn = R[b], R[B.top ^ b]
        where = {}
        for z in range(n):
            where.setdefault((rb[z], rn[z]), []).append(z)
        layer = []
        for x in range(n):
            row = []
            for y in range(n):
                zs = where.get((rb[x], rn[y]), [])
                if len(zs) != 1:
                    raise AxiomError("glue-exists" if not zs else "glue-unique", (b, x, y), f"candidates {zs}")
                row.append(zs[0])
            layer.append(tuple(row))
        table.append(tuple(layer))
    X = BSet(B, n, tuple(table))
    fail = bset_failure(B, X.action)
    if fail:
        raise InvariantViolation(f"reconstructed action fails {fail}")
    if X.labels != R:
        raise InvariantViolation("reconstructed action does not reproduce the relations")
    return X


# ---------------------------------------------------------------------------
# glueing along partitions


def glue(X, P, assignment):
    """The unique ``z`` with ``z ~_b assignment[b]`` for every part ``b`` of ``P``."""
    B = X.algebra
    if not isinstance(P, Partition):
        P = validate_partition(B, B.top, P)
    else:
        validate_partition(B, P.base, P.parts)
    if P.base != B.top:
        raise RepresentationError("glueing needs a partition of 1")
    parts = list(P.parts)
    try:
        xs = [assignment[b] for b in parts]
    except KeyError as e:
        raise RepresentationError(f"assignment misses part {e.args[0]}") from None
    z = _glue_raw(X, parts, xs)
    for b, x in zip(parts, xs):
        if X.action[b][z][x] != x:
            raise InvariantViolation(f"glue result {z} is not ~_{b} to {x}")
    return z


def _glue_raw(X, parts, xs):
    # z = b1(x1, glue({b1|b2, b3, ...}, x2, x3, ...)) with b1 the last part folded in
    if len(parts) == 1:
        return xs[0]
    rest = _glue_raw(X, [parts[0] | parts[1]] + parts[2:], [xs[1]] + xs[2:])
    return X.action[parts[0]][xs[0]][rest]


def check_glue_laws(X, P):
    """Exhaustively certify the three glueing laws at partition ``P``."""
    parts = list(P.parts)
    n = X.carrier
    cert = Certificate(f"glue{parts}")
    tuples = list(product(range(n), repeat=len(parts)))
    g = {xs: _glue_raw(X, parts, list(xs)) for xs in tuples}
    for x in range(n):
        cert.record("glue-constant", g[(x,) * len(parts)] == x, (x,))
    for xs in tuples:
        z = g[xs]
        for b, x in zip(parts, xs):
            cert.record("glue-agrees", X.action[b][z][x] == x, (xs, b))
        for ys in tuples:
            mixed = tuple(X.action[b][x][y] for b, x, y in zip(parts, xs, ys))
            cert.record("glue-absorbs", g[mixed] == z, (xs, ys))
    return cert


# ---------------------------------------------------------------------------
# homomorphisms


def bset_relation_arrays(X):
    return [list(r) for r in X.labels]


def enumerate_bset_homs(X, Y, allowed=None):
    """All maps preserving every ``~_b``, lexicographic."""
    if X.algebra != Y.algebra:
        raise RepresentationError("B-sets over different algebras")
    return _backend.search_homs(X.carrier, Y.carrier, X.labels, Y.labels, [], [], allowed)


def is_bset_hom(X, Y, f):
    """Action-preservation test, independent of the relation presentation."""
    for b in X.algebra.elements():
        ax, ay = X.action[b], Y.action[b]
        for x in range(X.carrier):
            for y in range(X.carrier):
                if f[ax[x][y]] != ay[f[x]][f[y]]:
                    return False
    return True


# ---------------------------------------------------------------------------
# distributions and free B-sets


@dataclass(frozen=True)
class Distribution:
    algebra: BooleanAlgebra
    omega: tuple

    def __call__(self, i):
        return self.omega[i]

    @property
    def support(self):
        return [i for i, w in enumerate(self.omega) if w]

    def atom_map(self):
        """The function atoms -> index set: atom ``a`` goes to the unique ``i`` with ``a <= omega(i)``."""
        return dist_to_atom_map(self.algebra, self.omega)


def validate_distribution(B, omega):
    omega = tuple(int(w) for w in omega)
    B.check(*omega)
    validate_partition(B, B.top, omega, extended=True)
    return Distribution(B, omega)


def dirac(B, size, i):
    return tuple(B.top if j == i else 0 for j in range(size))


def dist_from_atom_map(B, g, size):
    w = [0] * size
    for a, i in enumerate(g):
        w[i] |= 1 << a
    return tuple(w)


def dist_to_atom_map(B, omega):
    g = []
    for a in range(B.atoms):
        owners = [i for i, w in enumerate(omega) if w >> a & 1]
        if len(owners) != 1:
            raise RepresentationError(f"atom {a} lies under {len(owners)} values of {omega}")
        g.append(owners[0])
    return tuple(g)


def all_distributions(B, size):
    """Every distribution on ``size`` indices, sorted."""
    if size == 0:
        return []
    count = size ** B.atoms
    if count > MAX_CARRIER:
        raise CapacityError("distribution count", count, MAX_CARRIER)
    return sorted(dist_from_atom_map(B, g, size) for g in product(range(size), repeat=B.atoms))


def _subst(omega, gammas):
    out = [0] * len(gammas[0])
    for w, g in zip(omega, gammas):
        if w:
            for j, v in enumerate(g):
                out[j] |= w & v
    return tuple(out)


def dist_substitute(omega, gammas):
    """``omega(gamma)(j) = join over i of omega(i) & gamma_i(j)``."""
    gammas = list(gammas)
    if len(gammas) != len(omega.omega):
        raise RepresentationError("need one distribution per index of omega")
    if any(g.algebra != omega.algebra for g in gammas):
        raise RepresentationError("mismatched Boolean algebras")
    raw = [g.omega for g in gammas]
    if len({len(r) for r in raw}) > 1:
        raise RepresentationError("the family must share one index set")
    return validate_distribution(omega.algebra, _subst(omega.omega, raw))


@dataclass(eq=False)
class FreeBSet:
    bset: BSet
    dists: list
    unit: list  # unit[i] = carrier index of the Dirac distribution at i
    index: dict = field(repr=False, default_factory=dict)

    def verify_free(self, targets):
        """Every map generators -> Y extends along ``unit`` to exactly one hom."""
        cert = Certificate("free-bset")
        for t, Y in enumerate(targets):
            for g in product(range(Y.carrier), repeat=len(self.unit)):
                allowed = [list(range(Y.carrier)) for _ in range(self.bset.carrier)]
                for i, u in enumerate(self.unit):
                    allowed[u] = [g[i]]
                ext = enumerate_bset_homs(self.bset, Y, allowed)
                cert.record("unique-extension", len(ext) == 1, (t, g, len(ext)))
        return cert


def free_bset(B, generators):
    """Free B-set on ``generators`` (a count) with carrier all distributions."""
    size = generators if isinstance(generators, int) else len(generators)
    if size < 1:
        raise RepresentationError("need at least one generator")
    dists = all_distributions(B, size)
    index = {w: i for i, w in enumerate(dists)}
    E = eq_family_from_keys(B, len(dists), lambda b, x: tuple(b & w for w in dists[x]))
    X = action_from_eqs(E)
    unit = [index[dirac(B, size, i)] for i in range(size)]
    return FreeBSet(X, dists, unit, index)


# ---------------------------------------------------------------------------
# exponentials


@dataclass(eq=False)
class BSetExponential:
    bset: BSet
    homs: list
    Y: BSet
    Z: BSet
    index: dict = field(repr=False, default_factory=dict)

    def ev(self, f, y):
        return self.homs[f][y]

    def ev_table(self):
        """``ev`` as a map on ``Z^Y x Y``."""
        ny = self.Y.carrier
        return tuple(self.homs[f][y] for f in range(len(self.homs)) for y in range(ny))

    def transpose(self, X, f):
        ny = self.Y.carrier
        out = []
        for x in range(X.carrier):
            row = tuple(f[x * ny + y] for y in range(ny))
            if row not in self.index:
                raise InvariantViolation(f"transpose at {x} is not a hom: {row}")
            out.append(self.index[row])
        return tuple(out)

    def verify_universal(self, tests):
        return verify_universal_property(self, tests, bset_product, enumerate_bset_homs, is_bset_hom)


def bset_exponential(Y, Z):
    if Y.algebra != Z.algebra:
        raise RepresentationError("B-sets over different algebras")
    homs = enumerate_bset_homs(Y, Z)
    if not homs:
        raise InvariantViolation("no B-set homs")
    ZL = Z.labels
    E = eq_family_from_keys(Y.algebra, len(homs), lambda b, f: tuple(ZL[b][v] for v in homs[f]))
    X = action_from_eqs(E)
    return BSetExponential(X, homs, Y, Z, {h: i for i, h in enumerate(homs)})


def verify_universal_property(exp, tests, product_fn, homs_fn, is_hom_fn):
    """For each test object ``X``: ``g |-> ev o (g x 1)`` is a bijection
    ``Hom(X, Z^Y) -> Hom(X x Y, Z)`` and transposition is its inverse."""
    cert = Certificate("exponential")
    E, Y, Z = exp.bset if hasattr(exp, "bset") else exp.bmset, exp.Y, exp.Z
    ny = Y.carrier
    EY = product_fn(E, Y)
    ev = exp.ev_table()
    cert.record("ev-is-hom", is_hom_fn(EY, Z, ev), ())
    for t, X in enumerate(tests):
        XY = product_fn(X, Y)
        h1 = homs_fn(XY, Z)
        h1set = set(h1)
        h2 = homs_fn(X, E)
        images = []
        for g in h2:
            f = tuple(ev[g[x] * ny + y] for x in range(X.carrier) for y in range(ny))
            cert.record("ev-composite-is-hom", f in h1set, (t, g))
            images.append(f)
            cert.record("transpose-left-inverse", exp.transpose(X, f) == g, (t, g))
        cert.record("injective", len(set(images)) == len(images), (t,))
        cert.record("surjective", set(images) == h1set, (t, len(h1), len(set(images))))
        for f in h1:
            g = exp.transpose(X, f)
            back = tuple(ev[g[x] * ny + y] for x in range(X.carrier) for y in range(ny))
            cert.record("transpose-right-inverse", back == f, (t, f))
    return cert


# ---------------------------------------------------------------------------
# enumeration of all B-sets on a small carrier


def set_partitions(n):
    """All set partitions of ``range(n)`` as class-minimum label tuples."""
    out = []

    def rec(i, lab, reps):
        if i == n:
            out.append(tuple(lab))
            return
        for r in reps:
            lab.append(r)
            rec(i + 1, lab, reps)
            lab.pop()
        lab.append(i)
        rec(i + 1, lab, reps + [i])
        lab.pop()

    rec(0, [], [])
    return out


def enumerate_bsets(B, n):
    """All B-set structures on ``n`` points.

    A B-set on a finite carrier is a product of one factor per atom; choose a
    kernel relation per atom and keep the choices where the combined map to the
    product of the quotients is bijective.
    """
    parts = set_partitions(n)
    sizes = {p: len(set(p)) for p in parts}
    found = []
    for choice in product(parts, repeat=B.atoms):
        total = 1
        for p in choice:
            total *= sizes[p]
        if total != n:
            continue
        keys = [tuple(p[x] for p in choice) for x in range(n)]
        if len(set(keys)) != n:
            continue
        where = {k: x for x, k in enumerate(keys)}
        table = []
        for b in B.elements():
            layer = tuple(tuple(where[tuple(kx[i] if b >> i & 1 else ky[i] for i in range(B.atoms))]
                                for ky in keys) for kx in keys)
            table.append(layer)
        found.append(validate_bset(B, table))
    return found
