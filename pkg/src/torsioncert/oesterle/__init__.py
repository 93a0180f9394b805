"""Elementary intersection numbers on X_0(p), L_r operators and the M_d rank table."""

from .intersection import (
    H_fn,
    IntersectionQuery,
    Ire_dot_lambda,
    Ire_dot_lambda_oracle,
    Ire_prime_dot_lambda,
    Ire_prime_dot_lambda_oracle,
    Ire_prime_dot_path,
    Ire_prime_dot_path_oracle,
    Ire_prime_vector,
    ire_prime_dot_lambda_cd,
    ire_prime_dot_lambda_small,
    v_r,
    v_r_prime,
)
from .lr import (
    L_identity_holds,
    L_r_element,
    LrVariant,
    i_element,
    i_prime_element,
    lr_independence,
    t_prime,
)
from .rmatrix import (
    EpsTable,
    RMatrix,
    asymptotic_gate,
    check_Md,
    eps,
    find_Md,
    r_matrix,
    verify_md_table,
)

__all__ = [
    # Intersection numbers
    "H_fn",
    "IntersectionQuery",
    "Ire_dot_lambda",
    "Ire_dot_lambda_oracle",
    "Ire_prime_dot_lambda",
    "Ire_prime_dot_lambda_oracle",
    "Ire_prime_dot_path",
    "Ire_prime_dot_path_oracle",
    "Ire_prime_vector",
    "ire_prime_dot_lambda_cd",
    "ire_prime_dot_lambda_small",
    "v_r",
    "v_r_prime",
    # L_r
    "L_identity_holds",
    "L_r_element",
    "LrVariant",
    "i_element",
    "i_prime_element",
    "lr_independence",
    "t_prime",
    # R_{d,u}
    "EpsTable",
    "RMatrix",
    "asymptotic_gate",
    "check_Md",
    "eps",
    "find_Md",
    "r_matrix",
    "verify_md_table",
]
