"""Bit-exact seeded generator used for every 'general' choice.

The generator is xorshift64* seeded through one round of splitmix64::

    state = splitmix64(seed)
    x ^= x >> 12; x ^= x << 25; x ^= x >> 27       (all mod 2**64)
    output = (x * 0x2545F4914F6CDD1D) mod 2**64

Integers in a closed range are drawn by rejection sampling on the top bits,
so the stream depends only on the seed, never on the platform.
"""

MASK64 = (1 << 64) - 1
COEFF_RANGE = 10**6


def splitmix64(x):
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


class XorShift:
    def __init__(self, seed=0):
        self.seed = seed
        self.state = splitmix64(seed & MASK64) or 1

    def next_u64(self):
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & MASK64
        x ^= x >> 27
        self.state = x
        return (x * 0x2545F4914F6CDD1D) & MASK64

    def randint(self, lo, hi):
        """Uniform integer in ``[lo, hi]``."""
        if hi < lo:
            raise ValueError("empty range")
        span = hi - lo + 1
        bits = span.bit_length()
        while True:
            v = self.next_u64() >> (64 - bits) if bits <= 64 else self._wide(bits)
            if v < span:
                return lo + v

    def _wide(self, bits):
        v = 0
        got = 0
        while got < bits:
            v = (v << 64) | self.next_u64()
            got += 64
        return v >> (got - bits)

    def coefficient(self, bound=COEFF_RANGE, nonzero=True):
        while True:
            c = self.randint(-bound, bound)
            if c or not nonzero:
                return c

    def choice(self, seq):
        return seq[self.randint(0, len(seq) - 1)]

    def shuffle(self, items):
        items = list(items)
        for i in range(len(items) - 1, 0, -1):
            j = self.randint(0, i)
            items[i], items[j] = items[j], items[i]
        return items
