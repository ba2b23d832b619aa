"""Uniform adapters over the two constructions for the game harness."""

from __future__ import annotations

import warnings

import numpy as np

from ..errors import ParameterError
from ..extractor import ToeplitzSeed
from ..fileformat import serialize_helper
from ..params import Params
from ..rfe import rfe_gen, rfe_rep
from ..sampler import Crs, generate_crs
from ..srrfe import srrfe_gen, srrfe_rep


class RfeScheme:
    """Construction 1; the public setup is the shared extractor seed ``Z``."""

    name = "rfe"
    construction = 1

    def __init__(self, params: Params):
        if params.construction != 1:
            raise ParameterError("rfe needs construction-1 parameters")
        self.params = params

    def setup(self, rng: np.random.Generator) -> ToeplitzSeed:
        return ToeplitzSeed.random(self.params.m, self.params.nu, rng)

    def seed(self, public) -> ToeplitzSeed:
        return public

    def gen(self, public, w, rng):
        return rfe_gen(w, public, self.params, rng)

    def rep(self, public, w, helper):
        return rfe_rep(w, helper, public, self.params)

    def blocks(self, public, helper) -> tuple[np.ndarray, np.ndarray]:
        return helper.p, helper.index_sets

    def helper_bytes(self, helper) -> bytes:
        return serialize_helper(helper, self.params)


class SrrfeScheme:
    """Construction 2; the public setup is a CRS."""

    name = "srrfe"
    construction = 2

    def __init__(self, params: Params):
        if params.construction != 2:
            raise ParameterError("srrfe needs construction-2 parameters")
        self.params = params

    def setup(self, rng: np.random.Generator) -> Crs:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            return generate_crs(self.params, rng)

    def seed(self, public) -> ToeplitzSeed:
        return public.seed

    def gen(self, public, w, rng):
        return srrfe_gen(w, public, self.params, rng)

    def rep(self, public, w, helper):
        return srrfe_rep(w, helper, public, self.params)

    def blocks(self, public, helper) -> tuple[np.ndarray, np.ndarray]:
        return helper.p, public.index_sets

    def helper_bytes(self, helper) -> bytes:
        return serialize_helper(helper, self.params)


class BrokenScheme(RfeScheme):
    """Deliberately insecure stub: the key is the first ``xi`` bits of ``p_1``.

    Used only as a sensitivity canary for the distinguishers.
    """

    name = "broken"

    def gen(self, public, w, rng):
        _, helper = rfe_gen(w, public, self.params, rng)
        return helper.p[0, : self.params.xi].copy(), helper

    def rep(self, public, w, helper):
        if rfe_rep(w, helper, public, self.params) is None:
            return None
        return helper.p[0, : self.params.xi].copy()


SCHEMES = {"rfe": RfeScheme, "srrfe": SrrfeScheme, "broken": BrokenScheme}


def make_scheme(scheme, params: Params):
    if not isinstance(scheme, str):
        return scheme
    try:
        return SCHEMES[scheme](params)
    except KeyError:
        raise ParameterError(f"unknown scheme {scheme!r}") from None
