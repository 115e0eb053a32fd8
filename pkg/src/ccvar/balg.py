"""Finite Boolean algebras as powersets of atoms.

An element of the algebra with ``k`` atoms is an ``int`` in ``range(2**k)``;
bit ``i`` says whether atom ``i`` lies below it.  Meet, join and negation are
bitwise.  Partitions are stored as sorted tuples of nonzero elements.
"""

from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Hashable, Mapping, Sequence

import numpy as np

from .errors import (AxiomError, CapacityError, DegenerateError, InvariantViolation,
                     JoinError, OverlapError, RepresentationError, ZeroPartError)

MAX_ATOMS = 16


@dataclass(frozen=True)
class BooleanAlgebra:
    atoms: int

    def __post_init__(self):
        if not isinstance(self.atoms, (int, np.integer)) or self.atoms < 1:
            raise DegenerateError(f"need at least one atom (0 != 1), got {self.atoms!r}")
        if self.atoms > MAX_ATOMS:
            raise CapacityError("atoms", self.atoms, MAX_ATOMS)

    @property
    def size(self):
        return 1 << self.atoms

    @property
    def top(self):
        return (1 << self.atoms) - 1

    @property
    def bottom(self):
        return 0

    def elements(self):
        return range(self.size)

    def atom(self, i):
        return 1 << i

    def atom_list(self):
        return [1 << i for i in range(self.atoms)]

    def check(self, *elems):
        for a in elems:
            if not isinstance(a, (int, np.integer)) or a < 0 or a > self.top:
                raise RepresentationError(f"{a!r} is not an element of the {self.atoms}-atom algebra")

    def meet(self, a, b):
        self.check(a, b)
        return a & b

    def join(self, a, b):
        self.check(a, b)
        return a | b

    def neg(self, a):
        self.check(a)
        return self.top ^ a

    def leq(self, a, b):
        return self.meet(a, b) == a

    def atoms_below(self, a):
        self.check(a)
        return [i for i in range(self.atoms) if a >> i & 1]

    def cond(self, b, c, d):
        """Conditioned disjunction ``(b and c) or (not b and d)``."""
        return (b & c) | (self.top ^ b) & d

    def fmt(self, a):
        """Bit string with atom 0 first, matching the ``10``/``01`` notation."""
        return "".join("1" if a >> i & 1 else "0" for i in range(self.atoms))

    def parse(self, s):
        if len(s) != self.atoms or set(s) - {"0", "1"}:
            raise RepresentationError(f"bad bit string {s!r} for {self.atoms} atoms")
        return sum(1 << i for i, ch in enumerate(s) if ch == "1")


def boolean_ops(B, a, b):
    """Meet, join, negation of ``a`` and the order test ``a <= b``."""
    return {"meet": B.meet(a, b), "join": B.join(a, b), "neg": B.neg(a), "leq": B.leq(a, b)}


@dataclass(frozen=True)
class Partition:
    algebra: BooleanAlgebra
    base: int
    parts: tuple

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def is_local(self):
        """Local partition of ``base``: adding the complement of ``base`` gives a
        partition of 1.  With every partition admissible this is the same as being
        a partition of ``base``."""
        B = self.algebra
        extra = B.neg(self.base)
        parts = set(self.parts) | ({extra} - {0})
        try:
            validate_partition(B, B.top, parts)
        except AxiomError:
            return False
        return True


def validate_partition(B, base, parts, extended=False):
    """Check that ``parts`` is a partition of ``base``.

    With ``extended=True`` zero parts are allowed and dropped.
    Raises :class:`ZeroPartError`, :class:`OverlapError` or :class:`JoinError`.
    """
    B.check(base)
    parts = list(parts)
    B.check(*parts)
    if extended:
        parts = [p for p in parts if p]
    for p in parts:
        if p == 0:
            raise ZeroPartError((p,))
    if len(set(parts)) != len(parts):
        dup = next(p for p in parts if parts.count(p) > 1)
        raise OverlapError((dup, dup))
    for i, p in enumerate(parts):
        for q in parts[i + 1:]:
            if p & q:
                raise OverlapError((p, q))
    total = 0
    for p in parts:
        total |= p
    if total != base:
        raise JoinError((total, base))
    return Partition(B, base, tuple(sorted(parts)))


def all_partitions(B, base=None):
    """Every partition of ``base`` (default 1), in sorted order."""
    base = B.top if base is None else base
    atoms = B.atoms_below(base)
    out = []

    def rec(i, blocks):
        if i == len(atoms):
            out.append(tuple(sorted(blocks)))
            return
        bit = 1 << atoms[i]
        for j in range(len(blocks)):
            blocks[j] |= bit
            rec(i + 1, blocks)
            blocks[j] ^= bit
        blocks.append(bit)
        rec(i + 1, blocks)
        blocks.pop()

    if atoms:
        rec(0, [])
    else:
        out.append(())
    return [Partition(B, base, p) for p in sorted(out)]


def refine_partitions(P, Q):
    """``{b & c : b in P, c in Q[b]}`` with zeros dropped."""
    B = P.algebra
    validate_partition(B, P.base, P.parts)
    if set(Q) != set(P.parts):
        raise RepresentationError("refinement family must be indexed by the parts of P")
    out = []
    for b in P.parts:
        q = Q[b]
        validate_partition(B, q.base, q.parts)
        out.extend(b & c for c in q.parts)
    return validate_partition(B, P.base, out, extended=True)


def pushforward_partition(P, alpha, index_set=None):
    """Coarsen ``P`` along the surjection ``alpha``: one part per index."""
    B = P.algebra
    missing = [b for b in P.parts if b not in alpha]
    if missing:
        raise RepresentationError(f"alpha is not total: no value at {missing}")
    image = {alpha[b] for b in P.parts}
    if index_set is not None and set(index_set) != image:
        raise RepresentationError(f"alpha is not surjective onto the index set: misses "
                                  f"{sorted(set(index_set) - image, key=repr)}")
    joins = {}
    for b in P.parts:
        joins[alpha[b]] = joins.get(alpha[b], 0) | b
    return validate_partition(B, P.base, joins.values())


@dataclass(frozen=True)
class BoolHom:
    source: BooleanAlgebra
    target: BooleanAlgebra
    table: tuple
    atom_map: tuple = field(default=(), compare=False)

    def __call__(self, b):
        return self.table[b]

    @classmethod
    def from_atom_map(cls, B, C, g):
        """Hom ``B -> C`` induced by ``g: atoms(C) -> atoms(B)``."""
        if len(g) != C.atoms or any(not 0 <= a < B.atoms for a in g):
            raise RepresentationError(f"bad atom map {g!r}")
        table = tuple(sum(1 << j for j, a in enumerate(g) if b >> a & 1) for b in B.elements())
        return cls(B, C, table, tuple(g))

    def image_partition(self, P):
        """``f(P)`` with zeros dropped; always a partition of ``f(base)``."""
        return validate_partition(self.target, self(P.base), [self(b) for b in P.parts], extended=True)


def validate_bool_hom(B, C, table):
    table = tuple(table)
    if len(table) != B.size:
        raise RepresentationError(f"table has {len(table)} entries, expected {B.size}")
    C.check(*table)
    if table[0] != 0:
        raise AxiomError("preserves-0", (0, table[0]))
    if table[B.top] != C.top:
        raise AxiomError("preserves-1", (B.top, table[B.top]))
    for a in B.elements():
        if table[B.neg(a)] != C.neg(table[a]):
            raise AxiomError("preserves-neg", (a,))
        for b in B.elements():
            if table[a & b] != table[a] & table[b]:
                raise AxiomError("preserves-meet", (a, b))
            if table[a | b] != table[a] | table[b]:
                raise AxiomError("preserves-join", (a, b))
    # normal form: every target atom sits below the image of exactly one source atom
    g = []
    for j in range(C.atoms):
        owners = [i for i in range(B.atoms) if table[1 << i] >> j & 1]
        if len(owners) != 1:
            raise InvariantViolation(f"target atom {j} lies under images of atoms {owners}")
        g.append(owners[0])
    f = BoolHom.from_atom_map(B, C, g)
    if f.table != table:
        raise InvariantViolation("atom normal form disagrees with the table")
    return f


def enumerate_boolean_homs(B, C):
    homs = {}
    for g in product(range(B.atoms), repeat=C.atoms):
        f = BoolHom.from_atom_map(B, C, g)
        homs.setdefault(f.table, f)
    out = []
    for table in sorted(homs):
        validate_bool_hom(B, C, table)
        out.append(homs[table])
    return out


# ---------------------------------------------------------------------------
# Boolean algebras presented by "if a then b else c"


@dataclass
class BooleanStructure:
    """A Boolean algebra on an arbitrary carrier, with its atom decomposition.

    ``encode[i]`` is the bit vector of carrier element ``i`` in ``algebra``;
    ``decode`` is the inverse list.
    """

    carrier: list
    algebra: BooleanAlgebra
    encode: list
    decode: list
    index: dict

    def bits(self, x):
        return self.encode[self.index[x]]

    def elem(self, b):
        return self.carrier[self.decode[b]]

    @property
    def atoms(self):
        return [self.elem(1 << i) for i in range(self.algebra.atoms)]


_DICKER = ("a(b,c)(d,e)=a(b(d,e),c(d,e))", "0(b,c)=c", "1(b,c)=b", "a(0,a)=0", "a(b,0)=b(a,0)")


def boolean_from_ifthenelse(carrier: Sequence[Hashable], one, zero,
                            ternary: Callable | Mapping) -> BooleanStructure:
    """Build a Boolean algebra from constants and a conditional ternary operation.

    Checks the five Dicker axioms, derives ``b & c = b(c,0)``, ``b | c = b(b,c)``,
    ``b' = b(0,1)``, verifies the lattice laws and returns the isomorphism with a
    powerset of atoms.  An :class:`AxiomError` names the failing axiom.
    """
    carrier = list(carrier)
    n = len(carrier)
    if n > 1 << MAX_ATOMS:
        raise CapacityError("carrier size", n, 1 << MAX_ATOMS)
    index = {x: i for i, x in enumerate(carrier)}
    if len(index) != n:
        raise RepresentationError("carrier has repeated elements")
    o, z = index[one], index[zero]
    if o == z:
        raise DegenerateError("0 = 1")
    T = np.empty((n, n, n), dtype=np.int64)
    call = ternary if callable(ternary) else (lambda a, b, c: ternary[a, b, c])
    for a, b, c in product(range(n), repeat=3):
        v = call(carrier[a], carrier[b], carrier[c])
        if v not in index:
            raise RepresentationError(f"ternary leaves the carrier at {(carrier[a], carrier[b], carrier[c])}")
        T[a, b, c] = index[v]

    def fail(k, wit):
        raise AxiomError(_DICKER[k], tuple(carrier[i] for i in wit))

    r = np.arange(n)
    A, Bv, C, D, E = np.ix_(r, r, r, r, r)
    lhs = T[T[A, Bv, C], D, E]
    rhs = T[A, T[Bv, D, E], T[C, D, E]]
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        fail(0, bad[0])
    for b in range(n):
        for c in range(n):
            if T[z, b, c] != c:
                fail(1, (b, c))
            if T[o, b, c] != b:
                fail(2, (b, c))
    for a in range(n):
        if T[a, z, a] != z:
            fail(3, (a,))
        for b in range(n):
            if T[a, b, z] != T[b, a, z]:
                fail(4, (a, b))

    meet = T[:, :, z]
    join = T[r[:, None], r[:, None], r[None, :]]
    neg = T[r, z, o]
    _check_boolean_laws(meet, join, neg, o, z)
    atoms = [a for a in range(n) if a != z and all(meet[a, x] in (z, a) for x in range(n))]
    k = len(atoms)
    if n != 1 << k:
        raise InvariantViolation(f"{n} elements but {k} atoms")
    encode = [sum(1 << i for i, a in enumerate(atoms) if meet[a, x] == a) for x in range(n)]
    if sorted(encode) != list(range(n)):
        raise InvariantViolation("atom encoding is not a bijection")
    for x in range(n):
        if encode[neg[x]] != (n - 1) ^ encode[x]:
            raise InvariantViolation("negation is not complement on atoms")
        for y in range(n):
            if encode[meet[x, y]] != encode[x] & encode[y] or encode[join[x, y]] != encode[x] | encode[y]:
                raise InvariantViolation("lattice operations disagree with the atom encoding")
    decode = [0] * n
    for x, e in enumerate(encode):
        decode[e] = x
    return BooleanStructure(carrier, BooleanAlgebra(k), encode, decode, index)


def _check_boolean_laws(meet, join, neg, one, zero):
    n = len(neg)
    r = np.arange(n)
    X, Y, Z = np.ix_(r, r, r)
    laws = {
        "meet-commutative": meet == meet.T,
        "join-commutative": join == join.T,
        "meet-associative": meet[meet[X, Y], Z] == meet[X, meet[Y, Z]],
        "join-associative": join[join[X, Y], Z] == join[X, join[Y, Z]],
        "absorption": meet[r[:, None], join[r[:, None], r[None, :]]] == r[:, None],
        "distributive": meet[X, join[Y, Z]] == join[meet[X, Y], meet[X, Z]],
        "complement-meet": meet[r, neg] == zero,
        "complement-join": join[r, neg] == one,
    }
    for name, ok in laws.items():
        bad = np.argwhere(~np.asarray(ok))
        if len(bad):
            raise InvariantViolation(f"derived operations violate {name} at {tuple(bad[0])}")


def powerset_ifthenelse(B):
    """The conditioned-disjunction presentation of ``B`` itself."""
    return list(B.elements()), B.top, 0, lambda a, b, c: B.cond(a, b, c)
