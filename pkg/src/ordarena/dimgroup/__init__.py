from ordarena.dimgroup.stepfn import (
    IntervalPartition,
    Order,
    PartitionIso,
    StepFunction,
    compare,
    constant,
    refine,
    riesz_interpolate,
    simplicity_witness,
    step,
    unperforation_check,
    partition_iso,
    random_step_function,
)
from ordarena.dimgroup.iso import IsoVerdict, check_partial_iso_group, naive_iso_oracle

__all__ = [
    "IntervalPartition",
    "Order",
    "PartitionIso",
    "StepFunction",
    "compare",
    "constant",
    "refine",
    "riesz_interpolate",
    "simplicity_witness",
    "step",
    "unperforation_check",
    "partition_iso",
    "random_step_function",
    "IsoVerdict",
    "check_partial_iso_group",
    "naive_iso_oracle",
]
