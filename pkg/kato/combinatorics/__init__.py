from kato.combinatorics.signature import (
    BranchSignature,
    DlousskySeq,
    Letter,
    Mat2Z,
    branch_selfintersections,
    derive_signature,
    matrix_to_word,
    seq_to_matrix,
    signature_from_ks,
    word_to_matrix,
)
from kato.combinatorics.curves import ChainMatrix, chain_det, k_invariant
