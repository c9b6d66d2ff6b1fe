"""Pure-Python monomial-map kernels.

A monomial map with ``k`` source columns is a pair ``(rows, phases)`` of
length-``k`` integer sequences: column ``c`` carries ``q**phases[c]`` in row
``rows[c]``, or is the zero column when ``rows[c] == -1``.  Phase exponents
live in Z/n.  ``_ckernels.pyx`` implements the same functions and must agree
with these bit for bit.
"""


def compose(g_rows, g_ph, f_rows, f_ph, n):
    """Matrix product ``g @ f``."""
    rows = []
    ph = []
    for c in range(len(f_rows)):
        mid = f_rows[c]
        if mid < 0 or g_rows[mid] < 0:
            rows.append(-1)
            ph.append(0)
        else:
            rows.append(g_rows[mid])
            ph.append((f_ph[c] + g_ph[mid]) % n)
    return rows, ph


def direct_sum(f_rows, f_ph, f_tdim, g_rows, g_ph):
    """Block-diagonal ``f (+) g``: f's block first."""
    rows = list(f_rows)
    for r in g_rows:
        rows.append(r + f_tdim if r >= 0 else -1)
    return rows, list(f_ph) + list(g_ph)


def tensor(f_rows, f_ph, g_rows, g_ph, g_tdim, n):
    """Kronecker product, left factor major."""
    rows = []
    ph = []
    for i in range(len(f_rows)):
        fr = f_rows[i]
        fp = f_ph[i]
        for j in range(len(g_rows)):
            gr = g_rows[j]
            if fr < 0 or gr < 0:
                rows.append(-1)
                ph.append(0)
            else:
                rows.append(fr * g_tdim + gr)
                ph.append((fp + g_ph[j]) % n)
    return rows, ph


def inverse(rows, ph, n):
    """Inverse of a bijective monomial map; ValueError otherwise."""
    k = len(rows)
    out_rows = [-1] * k
    out_ph = [0] * k
    for c in range(k):
        r = rows[c]
        if r < 0 or r >= k or out_rows[r] >= 0:
            raise ValueError("monomial map is not a bijection")
        out_rows[r] = c
        out_ph[r] = (-ph[c]) % n
    return out_rows, out_ph


def braid(deg_a, deg_b, sign, n):
    """Commutation map ``A*B -> B*A`` with phase ``sign*deg(u)*deg(v)``."""
    na = len(deg_a)
    nb = len(deg_b)
    rows = []
    ph = []
    for i in range(na):
        da = deg_a[i]
        for j in range(nb):
            rows.append(j * na + i)
            ph.append((sign * da * deg_b[j]) % n)
    return rows, ph
