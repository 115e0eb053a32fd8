"""Pure-Python versions of the hot kernels.  Same signatures and results as
the compiled ``_kernels`` module."""


def _constraints_by_position(nx, ops_x, ops_y):
    # constraint f(u[a]) == v[f(a)] can be checked once both a and u[a] are assigned
    at = [[] for _ in range(nx)]
    for u, v in zip(ops_x, ops_y):
        for a in range(nx):
            at[max(a, u[a])].append((u, v, a))
    return at


def search_homs(nx, ny, rel_x, rel_y, ops_x, ops_y, allowed=None, limit=-1):
    """All maps f: X -> Y (as tuples, lexicographic order) such that

    * ``rel_x[r][a] == rel_x[r][b]`` implies ``rel_y[r][f(a)] == rel_y[r][f(b)]``
      (relations given by class-minimum labels), and
    * ``f(ops_x[u][a]) == ops_y[u][f(a)]`` for every unary op.

    ``allowed[a]`` optionally restricts the candidate values of ``f(a)``.
    """
    if nx == 0:
        return [()]
    if ny == 0:
        return []
    at = _constraints_by_position(nx, ops_x, ops_y)
    cands = [list(allowed[a]) if allowed is not None else list(range(ny)) for a in range(nx)]
    f = [0] * nx
    out = []

    def ok(a):
        y = f[a]
        for lx, ly in zip(rel_x, rel_y):
            rep = lx[a]
            if rep != a and ly[f[rep]] != ly[y]:
                return False
        for u, v, b in at[a]:
            if f[u[b]] != v[f[b]]:
                return False
        return True

    def rec(a):
        if a == nx:
            out.append(tuple(f))
            return limit >= 0 and len(out) >= limit
        for y in cands[a]:
            f[a] = y
            if ok(a) and rec(a + 1):
                return True
        return False

    rec(0)
    return out


def bset_axiom_failure(act, top):
    """First failure of the B-set laws in ``act[b][x][y]`` or ``None``.

    Returns ``(axiom_index, b, c, x, y, z)`` with unused slots set to -1.
    Axioms: 0 b(x,x)=x, 1 1(x,y)=x, 2 b'(x,y)=b(y,x), 3 (b&c)(x,y)=b(c(x,y),y),
    4 b(b(x,y),z)=b(x,z), 5 b(x,b(y,z))=b(x,z).
    """
    nb = len(act)
    n = len(act[0]) if nb else 0
    for b in range(nb):
        ab = act[b]
        for x in range(n):
            if ab[x][x] != x:
                return (0, b, -1, x, -1, -1)
    a1 = act[top]
    for x in range(n):
        for y in range(n):
            if a1[x][y] != x:
                return (1, top, -1, x, y, -1)
    for b in range(nb):
        ab, an = act[b], act[top ^ b]
        for x in range(n):
            for y in range(n):
                if an[x][y] != ab[y][x]:
                    return (2, b, -1, x, y, -1)
    for b in range(nb):
        ab = act[b]
        for c in range(nb):
            ac, abc = act[c], act[b & c]
            for x in range(n):
                for y in range(n):
                    if abc[x][y] != ab[ac[x][y]][y]:
                        return (3, b, c, x, y, -1)
    for b in range(nb):
        ab = act[b]
        for x in range(n):
            for y in range(n):
                bxy = ab[x][y]
                for z in range(n):
                    if ab[bxy][z] != ab[x][z]:
                        return (4, b, -1, x, y, z)
                    if ab[x][ab[y][z]] != ab[x][z]:
                        return (5, b, -1, x, y, z)
    return None
