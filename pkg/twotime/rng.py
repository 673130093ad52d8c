"""
Seeded random streams.

Every random draw in twotime comes from a :class:`numpy.random.Generator`
backed by PCG64 and built from a :class:`Seed`. Independent streams are split
off a master seed with :func:`split`: sub-seed k is the first 64-bit word of
``SeedSequence(entropy=seed, spawn_key=(k,))``, so stream k never depends on
how many other streams were drawn.
"""
import numpy as np

from twotime.exceptions import ParameterError

SEED_LIMIT = 2 ** 64


class Seed(object):
    """ an unsigned 64-bit seed value """

    def __init__(self, value):
        try:
            value = int(value)
        except (TypeError, ValueError):
            raise ParameterError('seed {!r} is not an integer'.format(value))
        if not 0 <= value < SEED_LIMIT:
            raise ParameterError('seed {} is outside the unsigned 64-bit range'.format(value))
        self.value = value

    def __eq__(self, other):
        if isinstance(other, self.__class__):
            return self.value == other.value
        return False

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash(self.value)

    def __int__(self):
        return self.value

    def __repr__(self):
        return 'Seed({})'.format(self.value)


def as_seed(value):
    """ accepts a Seed or anything int() understands """
    if isinstance(value, Seed):
        return value
    return Seed(value)


def split(seed, k):
    """
    Derives the k-th sub-seed of a master seed

    :type seed: Seed
    :type k: int
    :rtype: Seed
    """
    seq = np.random.SeedSequence(entropy=as_seed(seed).value, spawn_key=(int(k),))
    return Seed(int(seq.generate_state(1, dtype=np.uint64)[0]))


def generator(seed):
    """
    :type seed: Seed
    :rtype: numpy.random.Generator
    """
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(as_seed(seed).value)))
