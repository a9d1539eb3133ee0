"""Uniform random generation, exact counting and validation of Wheeler DFAs.

The streaming sampler's inner loop runs in a compiled kernel when the
extension is built and in an equivalent pure-Python kernel otherwise;
``wdfa.BACKEND`` names the one in use.
"""
from ._backend import BACKEND
from .census import bounds, count_all_m, count_I, count_O, count_wdfa, count_wdfa_noneffective
from .codec import InVector, OutMatrix, decode, encode, sample_D, sample_I, sample_O
from .core import Params, Transition, Verdict, WheelerDfa, check_wheeler, validate_params
from .shuffler import Rng, SubsetSampler, init_sequential_shuffler, make_rng
from .stream import ListSink, NullSink, Sink, StreamStats, TextSink, sample_stream

__all__ = [
    "BACKEND",
    "Params",
    "Transition",
    "WheelerDfa",
    "Verdict",
    "validate_params",
    "check_wheeler",
    "Rng",
    "SubsetSampler",
    "init_sequential_shuffler",
    "make_rng",
    "OutMatrix",
    "InVector",
    "encode",
    "decode",
    "sample_O",
    "sample_I",
    "sample_D",
    "Sink",
    "NullSink",
    "ListSink",
    "TextSink",
    "StreamStats",
    "sample_stream",
    "count_O",
    "count_I",
    "count_wdfa",
    "count_wdfa_noneffective",
    "count_all_m",
    "bounds",
]
