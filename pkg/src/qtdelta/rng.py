"""Deterministic splittable random streams.

Every randomized routine takes one integer seed and derives named child
streams from it, so a single CLI seed reproduces the whole run.
"""

from __future__ import annotations

import hashlib
import random
from fractions import Fraction


def derive(seed, *labels) -> random.Random:
    key = ":".join([str(int(seed))] + [str(label) for label in labels])
    digest = hashlib.sha256(key.encode("utf-8")).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def rational(rng: random.Random, num_bound=3, den_bound=3,
             nonzero=False) -> Fraction:
    while True:
        num = rng.randint(-num_bound, num_bound)
        if num or not nonzero:
            return Fraction(num, rng.randint(1, den_bound))
