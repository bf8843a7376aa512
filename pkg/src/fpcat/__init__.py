"""Exact constructive homological algebra: Freyd categories, finitely presented
functors, generalized morphisms and spectral sequences over Q, Z and Q[x..]."""

from .additive import AdditiveClosure, additive_closure, rows, weak_kernel_rows
from .base import QuiverCat, RingCat, enumerate_paths, parse_quiver, ring_cat
from .category import compose, identity, lift_via_hom_structure, mor_eq, op_wrap, opposite
from .errors import CapabilityError, ParseError, UndecidedError, UsageError
from .fpfunctors import (ext_functor, fpfun, fpmod, functor_iso_test, hom_nat, invariant_factors, module,
                         module_iso_test, representable, resolution, tensor_functor, tor_functor)
from .freyd import freyd
from .genmor import (canonical_subobjects, gen_compose, gen_eq, generalized_hom_theorem, honest, honest_part,
                     inverse_of, pseudo_inverse, snake_connecting, span)
from .groebner import groebner, normal_form
from .linalg import hermite_normal_form, row_syzygies, smith_normal_form, solve_left
from .matrix import Matrix
from .rings import QQ, ZZ, parse_ring, polynomial_ring
from .specseq import FilteredComplex, total_complex
