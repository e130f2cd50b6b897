# cython: language_level=3
"""Compiled twin of qflag._poly_py (same surface, same canonical forms).

Coefficients stay arbitrary-precision Python ints; the speedup comes from
typed index loops and reduced interpreter overhead in the convolution,
alignment, and pseudo-division inner loops.  Keep the two files in sync:
the parity test suite runs both backends against each other.
"""

from math import gcd

KERNEL = "cython"

P_ZERO = (0, 1, ())
P_ONE = (0, 1, (1,))
F_ZERO = (P_ZERO, P_ONE)
F_ONE = (P_ONE, P_ONE)


cpdef tuple pcanon(long long off, long long step, coeffs):
    cdef Py_ssize_t first = -1, last = -1, t, n = len(coeffs)
    cdef long long g
    for t in range(n):
        if coeffs[t]:
            if first < 0:
                first = t
            last = t
    if first < 0:
        return P_ZERO
    if first == last:
        return (off + first * step, 1, (coeffs[first],))
    g = 0
    for t in range(first, last + 1):
        if coeffs[t]:
            g = gcd(g, t - first)
    if g == 1:
        return (off + first * step, step, tuple(coeffs[first:last + 1]))
    return (off + first * step, step * g,
            tuple([coeffs[first + t * g] for t in range((last - first) // g + 1)]))


def pis_zero(p):
    return not p[2]


def pdeg(p):
    if not p[2]:
        return -1
    return p[0] + (len(p[2]) - 1) * p[1]


def pval(p):
    return p[0]


def pconst(c):
    if c == 0:
        return P_ZERO
    return (0, 1, (c,))


def pmono(c, e):
    if c == 0:
        return P_ZERO
    return (e, 1, (c,))


def pneg(p):
    if not p[2]:
        return p
    return (p[0], p[1], tuple([-c for c in p[2]]))


def pscale(p, c):
    if c == 0 or not p[2]:
        return P_ZERO
    if c == 1:
        return p
    return (p[0], p[1], tuple([c * a for a in p[2]]))


cdef long long _estep(p):
    return p[1] if len(p[2]) > 1 else 0


cpdef tuple padd(a, b):
    cdef long long oa, sa, ob, sb, g, base, top, ka, ra, kb, rb
    cdef Py_ssize_t t, n
    if not a[2]:
        return b
    if not b[2]:
        return a
    oa = a[0]; sa = a[1]
    ob = b[0]; sb = b[1]
    ca = a[2]; cb = b[2]
    if oa == ob and sa == sb:
        n = max(len(ca), len(cb))
        out = list(ca) + [0] * (n - len(ca))
        for t in range(len(cb)):
            out[t] = out[t] + cb[t]
        return pcanon(oa, sa, out)
    g = gcd(gcd(_estep(a), _estep(b)), oa - ob)
    base = min(oa, ob)
    if g == 0:
        return pcanon(base, 1, [ca[0] + cb[0]])
    top = max(pdeg(a), pdeg(b))
    out = [0] * ((top - base) // g + 1)
    ka = (oa - base) // g
    ra = sa // g if len(ca) > 1 else 0
    for t in range(len(ca)):
        out[ka + t * ra] = out[ka + t * ra] + ca[t]
    kb = (ob - base) // g
    rb = sb // g if len(cb) > 1 else 0
    for t in range(len(cb)):
        out[kb + t * rb] = out[kb + t * rb] + cb[t]
    return pcanon(base, g, out)


def psub(a, b):
    return padd(a, pneg(b))


cdef list _expand(coeffs, Py_ssize_t ratio):
    cdef Py_ssize_t t, n = len(coeffs)
    if ratio <= 1:
        return list(coeffs)
    out = [0] * ((n - 1) * ratio + 1)
    for t in range(n):
        out[t * ratio] = coeffs[t]
    return out


cpdef tuple pmul(a, b):
    cdef long long oa, sa, ob, sb, g
    cdef Py_ssize_t i, j, la_n, lb_n
    if not a[2] or not b[2]:
        return P_ZERO
    oa = a[0]; sa = a[1]
    ob = b[0]; sb = b[1]
    ca = a[2]; cb = b[2]
    if len(ca) == 1:
        c = ca[0]
        if len(cb) > 1:
            return (oa + ob, sb, tuple([c * x for x in cb]))
        return (oa + ob, 1, (c * cb[0],))
    if len(cb) == 1:
        c = cb[0]
        return (oa + ob, sa, tuple([c * x for x in ca]))
    if sa == sb:
        g = sa
        la = list(ca); lb = list(cb)
    else:
        g = gcd(sa, sb)
        la = _expand(ca, sa // g)
        lb = _expand(cb, sb // g)
    if len(la) < len(lb):
        la, lb = lb, la
    la_n = len(la); lb_n = len(lb)
    out = [0] * (la_n + lb_n - 1)
    for j in range(lb_n):
        bj = lb[j]
        if bj:
            for i in range(la_n):
                ai = la[i]
                if ai:
                    out[i + j] = out[i + j] + ai * bj
    return pcanon(oa + ob, g, out)


def pcontent(p):
    c = 0
    for a in p[2]:
        c = gcd(c, a)
        if c == 1:
            return 1
    return c


cdef list _dprim(A):
    c = 0
    for a in A:
        c = gcd(c, a)
        if c == 1:
            return list(A)
    if c <= 1:
        return list(A)
    return [a // c for a in A]


cdef list _dprem(A, B):
    cdef Py_ssize_t dB = len(B) - 1, off, k
    cdef long long e
    d = B[-1]
    r = list(A)
    e = len(A) - len(B) + 1
    while r and len(r) - 1 >= dB:
        lt = r[-1]
        r = [d * c for c in r[:len(r) - 1]]
        off = len(r) - dB
        for k in range(dB):
            r[off + k] = r[off + k] - lt * B[k]
        while r and r[len(r) - 1] == 0:
            r.pop()
        e -= 1
    if e > 0 and r:
        f = d ** e
        r = [c * f for c in r]
    return r


cdef list _dgcd(A, B):
    cdef long long d
    A = _dprim(A)
    B = _dprim(B)
    if len(A) < len(B):
        A, B = B, A
    g = 1
    h = 1
    while True:
        d = len(A) - len(B)
        R = _dprem(A, B)
        if not R:
            break
        if len(R) == 1:
            B = [1]
            break
        A, B = B, [c // (g * h ** d) for c in R]
        g = A[-1]
        if d == 1:
            h = g
        elif d > 1:
            h = g ** d // h ** (d - 1)
    B = _dprim(B)
    if B[-1] < 0:
        B = [-c for c in B]
    return B


cpdef tuple pgcd(a, b):
    cdef long long v, ea, eb, g
    if not a[2]:
        if not b[2]:
            return P_ZERO
        c = pcontent(b)
        p = b if c == 1 else (b[0], b[1], tuple([x // c for x in b[2]]))
        return pneg(p) if p[2][-1] < 0 else p
    if not b[2]:
        return pgcd(b, a)
    v = min(a[0], b[0])
    ea = _estep(a); eb = _estep(b)
    if ea == 0 and eb == 0:
        return (v, 1, (1,))
    if ea == 0 or eb == 0:
        return (v, 1, (1,))
    g = gcd(ea, eb)
    la = _expand(a[2], ea // g)
    lb = _expand(b[2], eb // g)
    return pcanon(v, g, _dgcd(la, lb))


cdef list _ddivexact(A, B):
    cdef Py_ssize_t dB = len(B) - 1, i, k, n
    b = B[-1]
    R = list(A)
    n = len(A) - len(B) + 1
    Q = [0] * n
    for i in range(n - 1, -1, -1):
        c = R[i + dB]
        if c:
            q, rem = divmod(c, b)
            if rem:
                raise ArithmeticError("inexact polynomial division")
            Q[i] = q
            for k in range(dB + 1):
                R[i + k] = R[i + k] - q * B[k]
    for c in R:
        if c:
            raise ArithmeticError("inexact polynomial division")
    return Q


cpdef tuple pdivexact(a, b):
    cdef long long off, ea, eb, g
    if not b[2]:
        raise ZeroDivisionError("polynomial division by zero")
    if not a[2]:
        return P_ZERO
    off = a[0] - b[0]
    if off < 0:
        raise ArithmeticError("inexact polynomial division")
    if len(b[2]) == 1:
        d = b[2][0]
        out = []
        for c in a[2]:
            q, rem = divmod(c, d)
            if rem:
                raise ArithmeticError("inexact polynomial division")
            out.append(q)
        return (off, a[1], tuple(out))
    ea = _estep(a); eb = _estep(b)
    if ea == 0:
        raise ArithmeticError("inexact polynomial division")
    g = gcd(ea, eb)
    la = _expand(a[2], ea // g)
    lb = _expand(b[2], eb // g)
    return pcanon(off, g, _ddivexact(la, lb))


cpdef tuple fmake(num, den):
    cdef long long v
    if not den[2]:
        raise ZeroDivisionError("zero denominator")
    if not num[2]:
        return F_ZERO
    v = min(num[0], den[0])
    if v:
        num = (num[0] - v, num[1], num[2])
        den = (den[0] - v, den[1], den[2])
    g = pgcd(num, den)
    if g != P_ONE and (g[0] or len(g[2]) > 1 or g[2][0] != 1):
        num = pdivexact(num, g)
        den = pdivexact(den, g)
    c = gcd(pcontent(num), pcontent(den))
    if c > 1:
        num = (num[0], num[1], tuple([x // c for x in num[2]]))
        den = (den[0], den[1], tuple([x // c for x in den[2]]))
    if den[2][-1] < 0:
        num = pneg(num)
        den = pneg(den)
    return (num, den)


def fis_zero(f):
    return not f[0][2]


def fneg(f):
    return (pneg(f[0]), f[1])


cpdef tuple fadd(x, y):
    nx = x[0]; dx = x[1]
    ny = y[0]; dy = y[1]
    if not nx[2]:
        return y
    if not ny[2]:
        return x
    if dx == dy:
        return fmake(padd(nx, ny), dx)
    return fmake(padd(pmul(nx, dy), pmul(ny, dx)), pmul(dx, dy))


def fsub(x, y):
    return fadd(x, fneg(y))


cpdef tuple fmul(x, y):
    nx = x[0]; dx = x[1]
    ny = y[0]; dy = y[1]
    if not nx[2] or not ny[2]:
        return F_ZERO
    return fmake(pmul(nx, ny), pmul(dx, dy))


cpdef tuple fdiv(x, y):
    ny = y[0]; dy = y[1]
    if not ny[2]:
        raise ZeroDivisionError("division by zero scalar")
    nx = x[0]; dx = x[1]
    if not nx[2]:
        return F_ZERO
    return fmake(pmul(nx, dy), pmul(dx, ny))
