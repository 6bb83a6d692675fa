"""rank3kit: rank-3 graph families over finite fields at desk scale.

Constructs the classical strongly regular graph families attached to
affine rank-3 permutation groups (Hamming, bilinear forms, affine
polar, alternating forms, Suzuki-Tits ovoid, Paley, Peisert, Van
Lint-Schrijver), checks their subdegrees against the closed-form
tables, and verifies 2-closure and automorphism-group statements by
exact orbital computation and refinement-guided search.
"""

__version__ = "0.1.0"

from .errors import BudgetExceeded, CapExceeded, NotComputed  # noqa: F401
