"""Candidate confounder definitions on causal DAGs.

Build a Dag, optionally attach an exact discrete model, then ask the
classic questions: which adjustment sets are minimally sufficient, which
covariates count as confounders under each of six candidate definitions,
which definitions satisfy the bias-elimination/bias-reduction properties,
and what the covariate-selection procedures keep.
"""
from ._kernels import BACKEND as KERNEL_BACKEND
from .adjust import (
    AdjustmentVerdict,
    MinimalSetCatalog,
    backdoor_paths,
    is_sufficient,
    minimal_sufficient_sets,
    union_of_minimal,
)
from .classify import (
    ConfounderReport,
    check_implications,
    classify_d1_graphical,
    classify_d1_numeric,
    classify_d2,
    classify_d3,
    classify_d4,
    classify_d5,
    classify_d6,
    classify_variable,
    conditional_confounder,
    surrogate_confounder,
)
from .errors import ConfounderError
from .fuzz import FuzzConfig, FuzzReport, fuzz
from .graph import (
    Dag,
    Graph,
    Path,
    build_dag,
    d_separated,
    enumerate_paths,
    is_blocked,
    relatives,
    remove_into,
    subgraph_restrict,
)
from .model import (
    Cpt,
    CounterfactualJoint,
    DiscreteModel,
    ace,
    bias,
    build_model,
    cf_joint,
    cf_unconfounded,
    ci_test,
    cond_expectation,
    intervene,
    joint_probability,
    standardized_rd,
)
from .properties import PropertyVerdict, check_property1, check_property2a, check_property2b
from .registry import RegistryEntry, registry_entries, run_paper_suite
from .selection import (
    IndependenceOracle,
    SelectionTrace,
    backward_select,
    forward_select,
    robins_reduction,
)

__version__ = "0.1.0"

__all__ = [
    "AdjustmentVerdict",
    "ConfounderError",
    "ConfounderReport",
    "CounterfactualJoint",
    "Cpt",
    "Dag",
    "DiscreteModel",
    "FuzzConfig",
    "FuzzReport",
    "Graph",
    "IndependenceOracle",
    "KERNEL_BACKEND",
    "MinimalSetCatalog",
    "Path",
    "PropertyVerdict",
    "RegistryEntry",
    "SelectionTrace",
    "ace",
    "backdoor_paths",
    "backward_select",
    "bias",
    "build_dag",
    "build_model",
    "cf_joint",
    "cf_unconfounded",
    "check_implications",
    "check_property1",
    "check_property2a",
    "check_property2b",
    "ci_test",
    "classify_d1_graphical",
    "classify_d1_numeric",
    "classify_d2",
    "classify_d3",
    "classify_d4",
    "classify_d5",
    "classify_d6",
    "classify_variable",
    "cond_expectation",
    "conditional_confounder",
    "d_separated",
    "enumerate_paths",
    "fuzz",
    "intervene",
    "is_blocked",
    "is_sufficient",
    "joint_probability",
    "minimal_sufficient_sets",
    "registry_entries",
    "relatives",
    "remove_into",
    "robins_reduction",
    "run_paper_suite",
    "standardized_rd",
    "subgraph_restrict",
    "surrogate_confounder",
    "union_of_minimal",
]
