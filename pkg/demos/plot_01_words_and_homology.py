"""
Twist words and their action on homology
========================================

Words in Dehn twists act on H_1 of the surface by products of symplectic
transvections.  The oracle compares two words through that action.
"""

import numpy as np

from sclcert import builtin_config, parse_word
from sclcert.homology import check_identity, format_matrix, is_symplectic, word_image

# the genus-2 chain: a1, a2, a3 form a chain, a5 bounds it
cfg = builtin_config("chain5", 2)
print(cfg.ids)

# a single twist and its inverse
T = word_image(parse_word("a2", cfg))
print(format_matrix(T))
print(is_symplectic(T), np.array_equal(T.dot(word_image(parse_word("a2'", cfg))), np.eye(4, dtype=int)))

###############################################################################
# The braid relation holds in homology; a1 a2 = a2 a1 does not.
print(check_identity(parse_word("a1 a2 a1", cfg), parse_word("a2 a1 a2", cfg)))
print(check_identity(parse_word("a1 a2", cfg), parse_word("a2 a1", cfg)))

###############################################################################
# A twist about a separating curve is trivial on homology, so any identity
# involving one only gets a partial check.
two = builtin_config("twochain", 2)
print(format_matrix(word_image(parse_word("s", two))))
print(check_identity(parse_word("s", two), parse_word("a2 a1", two) ** 6))
