"""Simulator for N depolarizing channels under coherent control of causal order.

The package computes the exact output of the channel switch as an
n! x n! array of a*I + b*rho blocks, cross-checks it against a brute-force
generalized-Kraus sum, and evaluates the Holevo information of the
resulting channel.
"""

from .channels import (
    DensityMatrix,
    DepolarizingChannel,
    UnitaryBasis,
    apply_depolarizing,
    compose_definite,
    kraus_set,
    random_density,
    random_pure,
    weyl_basis,
)
from .errors import ReductionError, SizeLimitError
from .holevo import (
    HolevoReport,
    control_marginal,
    holevo_information,
    min_output_entropy,
    min_output_entropy_n2,
    von_neumann_entropy,
)
from .switch import (
    Block,
    ContractedTerm,
    ControlSpec,
    SwitchBlockMatrix,
    TermKind,
    assemble_blocks,
    closed_form_n2,
    closed_form_n3,
    completeness_defect,
    contract_pair,
    kraus_sum_output,
    realize,
)
from .symgroup import (
    Permutation,
    ZeroSubset,
    apply_order,
    enumerate_orders,
    zero_subsets,
)

__version__ = "0.1.0"

__all__ = [
    "Block",
    "ContractedTerm",
    "ControlSpec",
    "DensityMatrix",
    "DepolarizingChannel",
    "HolevoReport",
    "Permutation",
    "ReductionError",
    "SizeLimitError",
    "SwitchBlockMatrix",
    "TermKind",
    "UnitaryBasis",
    "ZeroSubset",
    "apply_depolarizing",
    "apply_order",
    "assemble_blocks",
    "closed_form_n2",
    "closed_form_n3",
    "completeness_defect",
    "compose_definite",
    "contract_pair",
    "control_marginal",
    "enumerate_orders",
    "holevo_information",
    "kraus_set",
    "kraus_sum_output",
    "min_output_entropy",
    "min_output_entropy_n2",
    "random_density",
    "random_pure",
    "realize",
    "von_neumann_entropy",
    "weyl_basis",
    "zero_subsets",
]
