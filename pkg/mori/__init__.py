"""Mori's division algorithm for k1A/k2A extremal neighborhoods."""

from mori.division import (
    FlipResult,
    Kind,
    LocusComponent,
    MoriData,
    MoriSequence,
    admissible_shifts,
    flip,
    flip_k1a,
    initial_k2as,
    is_admissible,
    mori_division,
    mutate,
)
from mori.exchange import ExchangeData, exchange_data
from mori.neighborhoods import K1A, K2A, k1a_degenerations, k1a_from, k2a_new

__all__ = [
    "ExchangeData",
    "FlipResult",
    "K1A",
    "K2A",
    "Kind",
    "LocusComponent",
    "MoriData",
    "MoriSequence",
    "admissible_shifts",
    "exchange_data",
    "flip",
    "flip_k1a",
    "initial_k2as",
    "is_admissible",
    "k1a_degenerations",
    "k1a_from",
    "k2a_new",
    "mori_division",
    "mutate",
]
