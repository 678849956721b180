#!/usr/bin/env python3
"""Independent evaluation of the toy digest arithmetic.

Regenerates toy_digest_golden.csv. Kept separate from the C++ implementation
so the golden vectors do not depend on it.
"""

M32 = 0xFFFFFFFF


def toy_digest(header, nonce, n_bits):
    x = (header * 2654435761 + nonce) & M32
    x ^= x >> 13
    x = (x * 2246822519) & M32
    x ^= x >> 16
    return x % (1 << n_bits)


CASES = [
    (0, 0, 2), (0, 0, 16), (0, 0, 24),
    (1, 0, 16), (1, 1, 16), (1, 0, 24),
    (2, 3, 4), (7, 100, 8), (12345, 678, 20),
    (0xDEADBEEF, 1023, 10), (0xFFFFFFFF, 0, 12), (0xFFFFFFFF, (1 << 24) - 1, 24),
    (42, 65535, 16), (2025, 4095, 12), (123456789, 31, 5),
]

if __name__ == "__main__":
    print("header,nonce,n_bits,digest")
    for h, n, b in CASES:
        print(f"{h},{n},{b},{toy_digest(h, n, b)}")
