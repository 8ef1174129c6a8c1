"""Shared demo net used by the tests, docs, and CLI walkthroughs."""

from .model import CPNet

# Four variables in topological order: 1 and 2 are binary roots, 3 is ternary
# with parents {1, 2}, 4 is binary with parent {3}.  Structure: 1->3, 2->3,
# 3->4.  The CPT rows below pin down ranks used throughout the test suite.
DEMO_NET_TEXT = """\
cpnet 4
domains 2 2 3 2
0 0 1 0
0 0 1 0
0 0 0 1
0 0 0 0
cpt 1
- : 1,2
cpt 2
- : 1,2
cpt 3
1,1 : 1,2,3
1,2 : 3,1,2
2,1 : 2,3,1
2,2 : 3,2,1
cpt 4
1 : 1,2
2 : 2,1
3 : 2,1
"""


def demo_net() -> CPNet:
    """The 24-outcome demo net (2 x 2 x 3 x 2 domains)."""
    return CPNet(
        n=4,
        adjacency=(
            (0, 0, 1, 0),
            (0, 0, 1, 0),
            (0, 0, 0, 1),
            (0, 0, 0, 0),
        ),
        domain_sizes=(2, 2, 3, 2),
        cpts=(
            ((1, 2),),
            ((1, 2),),
            ((1, 2, 3), (3, 1, 2), (2, 3, 1), (3, 2, 1)),
            ((1, 2), (2, 1), (2, 1)),
        ),
    )
