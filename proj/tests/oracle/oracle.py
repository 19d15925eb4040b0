"""Brute-force reference computations for the Buekenhout-Tits unital at small e.

Independent of the C++ implementation: plain polynomial arithmetic over GF(2),
no lookup tables, no shared code. Used to produce the frozen values asserted in
the C++ test suites.
"""
import itertools
import sys

MODULI = {1: (1 << 6) | 0b11, 2: (1 << 10) | (1 << 3) | 1}


class GF:
    def __init__(self, e):
        self.e = e
        self.m = 4 * e + 2
        self.mod = MODULI[e]
        self.Q = 1 << self.m
        self.q = 1 << (2 * e + 1)
        self.sigma = 1 << (e + 1)
        self.sub = [x for x in range(self.Q) if self.pow(x, self.q) == x]
        assert len(self.sub) == self.q
        self.eps = None
        for x in range(self.Q):
            if self.pow(x, self.q) == x ^ 1:
                d = self.mul(x, x) ^ x
                if d != 1 and self.tr_sub(d) == 1:
                    self.eps, self.delta = x, d
                    break

    def mul(self, a, b):
        r = 0
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if a >> self.m:
                a ^= self.mod
        return r

    def pow(self, a, n):
        r = 1
        while n:
            if n & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            n >>= 1
        return r

    def inv(self, a):
        assert a
        return self.pow(a, self.Q - 2)

    def spow(self, a, n):
        """Power on F_q with negative exponents read mod q-1; 0 -> 0."""
        if a == 0:
            return 0
        return self.pow(a, n % (self.q - 1))

    def tr_sub(self, x):
        s, y = 0, x
        for _ in range(2 * self.e + 1):
            s ^= y
            y = self.mul(y, y)
        return s

    def tr_big(self, x):
        s, y = 0, x
        for _ in range(self.m):
            s ^= y
            y = self.mul(y, y)
        return s

    def norm(self, v):
        for c in v:
            if c:
                ic = self.inv(c)
                return tuple(self.mul(x, ic) for x in v)
        raise ValueError("zero vector")


def unital(F):
    U = {(0, 0, 1)}
    s2 = F.sigma + 2
    for r in F.sub:
        for s in F.sub:
            for t in F.sub:
                f = F.pow(s, s2) ^ F.pow(t, F.sigma) ^ F.mul(s, t)
                U.add((1, s ^ F.mul(t, F.eps), r ^ F.mul(f, F.eps)))
    return U


def all_points(F):
    Q = F.Q
    pts = [(1, y, z) for y in range(Q) for z in range(Q)]
    pts += [(0, 1, z) for z in range(Q)]
    pts.append((0, 0, 1))
    return pts


def inc(F, P, L):
    return (F.mul(P[0], L[0]) ^ F.mul(P[1], L[1]) ^ F.mul(P[2], L[2])) == 0


def main():
    e = int(sys.argv[1]) if len(sys.argv) > 1 else 1
    F = GF(e)
    print("eps", hex(F.eps), "delta", hex(F.delta), "sub", [hex(x) for x in F.sub])
    U = unital(F)
    print("|U|", len(U))
    pts = all_points(F)
    lines = pts
    # line -> U points
    onU = {}
    for L in lines:
        onU[L] = [P for P in U if inc(F, P, L)]
    hist = {}
    for L in lines:
        hist[len(onU[L])] = hist.get(len(onU[L]), 0) + 1
    print("line hist", hist)

    def feet(P):
        res = []
        for L in lines:
            if len(onU[L]) == 1 and inc(F, P, L):
                res.append(onU[L][0])
        return res

    eps, d, sg = F.eps, F.delta, F.sigma
    # psi
    ds2 = F.pow(d, sg // 2)
    A = [[1, 1, eps], [0, F.mul(ds2, 1 ^ eps), F.mul(ds2, 1 ^ eps)], [0, 0, F.pow(d, sg + 1)]]

    def psi(P):
        x = [F.mul(c, c) for c in P]
        y = [F.mul(x[0], A[0][j]) ^ F.mul(x[1], A[1][j]) ^ F.mul(x[2], A[2][j]) for j in range(3)]
        return F.norm(y)
    print("psi stabilises U:", all(psi(P) in U for P in U))

    # witnesses
    P3 = (1, 0, eps)
    L3 = F.norm((d ^ eps, 0, 1))
    f3 = feet(P3)
    print("witness3 count", sum(inc(F, X, L3) for X in f3))
    dinv = F.inv(d)
    zs = F.inv(F.pow(d, sg))
    P4 = (1, 0, F.mul(zs, eps))
    f4 = feet(P4)
    L4lit = F.norm((dinv ^ F.mul(F.mul(dinv, dinv), eps), 0, 1))
    L4fix = F.norm((dinv ^ F.mul(zs, eps), 0, 1))
    print("witness4 off-pencil count", sum(inc(F, X, L4lit) for X in f4))
    print("witness4 a2=z2 count", sum(inc(F, X, L4fix) for X in f4))

    if e == 1:
        # spectrum over canonical reps
        gh = {}
        for a in F.sub:
            for b in F.sub:
                if b == F.pow(a, sg + 2):
                    continue
                P = (1, a, F.mul(b, eps))
                ft = feet(P)
                h = [0] * 10
                for L in lines:
                    h[sum(inc(F, X, L) for X in ft)] += 1
                for k, c in enumerate(h):
                    if c:
                        gh[k] = gh.get(k, 0) + c
                print("rep", hex(a), hex(b), h[:5])
        print("global reps hist", gh)


if __name__ == "__main__":
    main()
