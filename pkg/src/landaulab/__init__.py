"""Sieve counts, Dirichlet character sums, and Mertens-type products for the
four classical Landau problems (Goldbach pairs, prime pairs at a fixed even
gap, primes between consecutive squares, and primes of the form n^2 + 1)."""

from ._kernels import BACKEND
from .dirichlet_characters import (
    CharacterGroup,
    CharacterValue,
    ResidueSumReport,
    build_character_group,
    character_sum_nonprincipal,
    psi_chi,
    residue_sum,
    residue_sum_direct,
)
from .landau_estimators import (
    GoldbachWitness,
    ProblemReport,
    QuadraticCount,
    SquareIntervalEstimate,
    goldbach_count,
    goldbach_hl_reference,
    goldbach_main_term,
    goldbach_report,
    goldbach_residue,
    polignac_count,
    polignac_main_term,
    polignac_report,
    quadratic_count,
    quadratic_main_term,
    quadratic_report,
    square_interval_count,
    square_interval_estimate,
    square_interval_report,
)
from .mertens_lab import (
    ProductEstimate,
    WindowProduct,
    totient_tail_product,
    totient_window_product,
    mertens_log_sum,
    mertens_product,
    phi_reciprocal_sum,
    quadratic_constant_product,
    twin_constant_product,
)
from .prime_engine import (
    ArithmeticPoint,
    PrimeTable,
    ProgressionCount,
    arithmetic_point,
    count_primes_in_progression,
    euler_phi,
    moebius,
    primes_up_to,
    sieve_range,
    von_mangoldt,
)

__version__ = "0.1.0"
