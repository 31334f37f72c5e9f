from .kernels import gaussian_inner_2d, kernel_inner_1d_signed
from .quadrature import QuadratureConfig
from .integrals import (QuadratureWarning, area_finite_kappa, holonomy_factor_finite_kappa,
                        lk_finite_kappa, piercing_count_finite_kappa, sk_finite_kappa)
from .study import ConvergenceRow, convergence_study
