"""Module builders shared by the property and acceptance tests."""

import random

import numpy as np
import pytest

from modvertex.constructions import named_subgroups, natural_modules, six_point_data
from modvertex.gmod import extend_module, module_from_arrays, restrict
from modvertex.linalg import random_matrix
from modvertex.perm import group_from_gens


def battery_modules():
    data = six_point_data()
    return [
        restrict(natural_modules(14).E, named_subgroups(14).Y_alt),
        restrict(natural_modules(10).E, named_subgroups(10).X),
        restrict(extend_module(natural_modules(6).E, data.field), data.Q),
        restrict(natural_modules(8).E, named_subgroups(8).Q),
    ]


def transformed(V, seed):
    """Same module after a random change of basis and a shuffled generator list."""
    rng = np.random.default_rng(seed)
    f = V.field
    while True:
        X = random_matrix(V.dim, V.dim, f, rng)
        if X.is_invertible():
            break
    Xi = X.inverse()
    order = list(range(len(V.group.generators)))
    random.Random(seed).shuffle(order)
    gens = [V.group.generators[i] for i in order]
    G = group_from_gens(gens, V.group.degree)
    if [g.images for g in G.generators] != [g.images for g in gens]:
        pytest.skip("generator list was pruned")
    arrs = [(X @ V.gen_actions[i] @ Xi).entries for i in order]
    return module_from_arrays(G, arrs, f, "transformed")
