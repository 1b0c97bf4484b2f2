"""Picard groups of degree 3, 4, 5 Hurwitz stacks from their bundle presentations."""

from .catalog import (
    RelationRecord,
    branch_divisor_classes,
    branch_records,
    lambda_class,
    picard_ring,
    relation_catalog,
)
from .closed_forms import stated_group, stated_pic, stated_pic_simple
from .instance import (
    BundleProfile,
    HurwitzError,
    HurwitzInstance,
    IntegralityError,
    RankMismatchError,
    bundle_profile,
    epsilon,
    expected_free_rank,
)
from .lattices import (
    BasePresentation,
    basis_change_tu_to_ab,
    gens1,
    gens2,
    int_pic_change_matrix,
    integral_sublattice,
    mu2_kernel,
    pic_base,
    torsor_class,
    verify_int_pic_change,
)
from .picard import (
    DiagonalizationWitness,
    PicResult,
    TorsionIdentity,
    coherence_check,
    diagonal_form,
    diagonalization_witness,
    eliminate_units,
    genus2_consistency,
    genus2_relation,
    lambda_basis,
    pic_hurwitz,
    pic_simply_branched,
    torsion_generator_identity,
)

__all__ = [
    "BasePresentation",
    "BundleProfile",
    "DiagonalizationWitness",
    "HurwitzError",
    "HurwitzInstance",
    "IntegralityError",
    "PicResult",
    "RankMismatchError",
    "RelationRecord",
    "TorsionIdentity",
    "basis_change_tu_to_ab",
    "branch_divisor_classes",
    "branch_records",
    "bundle_profile",
    "coherence_check",
    "diagonal_form",
    "diagonalization_witness",
    "eliminate_units",
    "epsilon",
    "expected_free_rank",
    "gens1",
    "gens2",
    "genus2_consistency",
    "genus2_relation",
    "int_pic_change_matrix",
    "integral_sublattice",
    "lambda_basis",
    "lambda_class",
    "mu2_kernel",
    "pic_base",
    "pic_hurwitz",
    "pic_simply_branched",
    "picard_ring",
    "relation_catalog",
    "stated_group",
    "stated_pic",
    "stated_pic_simple",
    "torsion_generator_identity",
    "torsor_class",
    "verify_int_pic_change",
]
