#!/usr/bin/env python3
"""Independent recomputation of the storage-audit test vectors.

Uses py_ecc's bn128 arithmetic; prints values pinned in hfaudit_test.cpp.
"""
import hashlib
import hmac
import struct

from py_ecc import bn128 as bn

p = bn.field_modulus
q = bn.curve_order


def h2g(data: bytes):
    ctr = 0
    while True:
        d = hashlib.sha512(b"HEEZ-H2G-v1" + struct.pack(">I", ctr) + data).digest()
        x = int.from_bytes(d, "big") % p
        rhs = (x * x * x + 3) % p
        y = pow(rhs, (p + 1) // 4, p)
        if y * y % p == rhs:
            if (y & 1) != ((d[0] & 0x80) != 0):
                y = p - y
            return (bn.FQ(x), bn.FQ(y))
        ctr += 1


def compress(P):
    if P is None:
        return "00" * 33
    x, y = int(P[0].n), int(P[1].n)
    return ("03" if y & 1 else "02") + x.to_bytes(32, "big").hex()


def mul(P, k):
    # plain double-and-add, independent of py_ecc's multiply
    acc = None
    for bit in bin(k % q)[2:]:
        acc = bn.double(acc) if acc is not None else None
        if bit == "1":
            acc = bn.add(acc, P) if acc is not None else P
    return acc


def add(A, B):
    if A is None:
        return B
    if B is None:
        return A
    return bn.add(A, B)


def sc(label: bytes) -> int:
    return int.from_bytes(hashlib.sha256(label).digest(), "big") % q


def split(data: bytes, n: int):
    base, extra = divmod(len(data), n)
    out, at = [], 0
    for i in range(n):
        size = base + (1 if i < extra else 0)
        blk = data[at:at + size]
        for off in range(0, size, 30):
            out.append(blk[off:off + 30])
        at += size
    return out


def seeds(seed: int):
    return (hashlib.sha256(b"HEEZ-SDBL-v1" + struct.pack(">Q", seed)).digest(),
            hashlib.sha256(b"HEEZ-SDRA-v1" + struct.pack(">Q", seed)).digest())


def prf(key, label, a, b=0):
    return hmac.new(key, label + struct.pack(">II", a, b), hashlib.sha256).digest()


def challenge(M, n, seed):
    bl, ra = seeds(seed)
    idx, ctr = [], 0
    while len(idx) < M:
        v = int.from_bytes(prf(bl, b"idx", ctr)[:8], "big") % n
        if v not in idx:
            idx.append(v)
        ctr += 1
    nus = []
    for i in range(M):
        att = 0
        while True:
            nu = int.from_bytes(prf(ra, b"nu", i, att), "big") % q
            if nu:
                nus.append(nu)
                break
            att += 1
    return idx, nus


def tag(block, x, u):
    return mul(add(h2g(block), mul(u, int.from_bytes(block, "big"))), x)


def main():
    x = sc(b"hf-x")
    u = mul(bn.G1, sc(b"hf-u"))

    idx, nus = challenge(8, 16, 7)
    print("indices M=8 n=16 seed=7:", idx)
    print("nu[0]:", hex(nus[0]))

    f3 = bytes((i * 37 + 11) % 256 for i in range(90))
    for i, b in enumerate(split(f3, 3)):
        print(f"tag3[{i}]:", compress(tag(b, x, u)))

    f4 = bytes((i * 13 + 5) % 256 for i in range(100))
    blocks = split(f4, 4)
    tags = [tag(b, x, u) for b in blocks]
    idx, nus = challenge(3, 4, 11)
    sigma, mu = None, 0
    for i, nu in zip(idx, nus):
        sigma = add(sigma, mul(tags[i], nu))
        mu = (mu + nu * int.from_bytes(blocks[i], "big")) % q
    print("proof4 indices:", idx)
    print("proof4 sigma:", compress(sigma))
    print("proof4 mu:", mu.to_bytes(32, "big").hex())


if __name__ == "__main__":
    main()
