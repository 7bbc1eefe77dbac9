from .subspace import Subspace, Containment, image, apply, subspace_sum, intersect, preimage, orth_complement, \
    kernel, smallest_invariant, largest_invariant_in, contains, same_subspace, check_subspace_basis
