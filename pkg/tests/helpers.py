import numpy as np

from pcmtree import PCMatrix

REFERENCE = """
1   2   3   1/6
1/2 1   5   1
1/3 1/5 1   1/4
6   1   4   1
"""

INCOMPLETE = """
1   2   ?   1/6
1/2 1   5   1
?   1/5 1   ?
6   1   ?   1
"""

ALMOST = """
1   3   5   2
1/3 1   2   1/2
1/5 1/2 1   1/3
1/2 2   3   1
"""


def random_reciprocal(rng, n, spread=3.0):
    """Complete reciprocal matrix with log-entries uniform in [-spread, spread]."""
    a = np.ones((n, n))
    iu = np.triu_indices(n, 1)
    a[iu] = np.exp(rng.uniform(-spread, spread, iu[0].size))
    a[(iu[1], iu[0])] = 1 / a[iu]
    return PCMatrix(a)
