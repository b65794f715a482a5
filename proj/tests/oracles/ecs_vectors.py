#!/usr/bin/env python3
# Independent oracle for the frozen known-answer values in
# tests/unit/ecs_kat_test.cpp. Uses py_ecc (pure Python BLS12-381), not blst.
#
#   pip install py_ecc && python3 tests/oracles/ecs_vectors.py
import struct
from hashlib import sha256

from py_ecc.bls.hash_to_curve import hash_to_G1
from py_ecc.bls.point_compression import compress_G1
from py_ecc.optimized_bls12_381 import G1, G2, Z1, add, multiply, pairing, FQ12, neg

DST = b"ECS-SSBGP-v1"
TAG = b"ECS-PREFIX-v1"


def g1_bytes(p):
    return compress_G1(p).to_bytes(48, "big")


def prefix_encoding(links, j):
    out = TAG + struct.pack(">I", j)
    for msg, key in links[:j]:
        out += struct.pack(">I", len(msg)) + msg + g1_bytes(multiply(G1, key))
    return out


def chain_signature(links):
    sigma = Z1
    for j in range(1, len(links) + 1):
        h = hash_to_G1(prefix_encoding(links, j), DST, sha256)
        sigma = add(sigma, multiply(h, links[j - 1][1]))
    return sigma


def main():
    print("H(abc) =", g1_bytes(hash_to_G1(b"abc", DST, sha256)).hex())
    links = [(b"m1", 0x1234567), (b"m2", 0xabcdef01), (b"", 0x42)]
    for n in range(1, len(links) + 1):
        print(f"sigma_{n} =", g1_bytes(chain_signature(links[:n])).hex())
    for _, key in links:
        print("Y =", g1_bytes(multiply(G1, key)).hex())

    # Verification equation, checked in the oracle itself.
    sigma = chain_signature(links)
    lhs = pairing(G2, sigma)
    rhs = FQ12.one()
    for j in range(1, len(links) + 1):
        h = hash_to_G1(prefix_encoding(links, j), DST, sha256)
        rhs = rhs * pairing(multiply(G2, links[j - 1][1]), h)
    print("pairing equation holds:", lhs == rhs)


if __name__ == "__main__":
    main()
