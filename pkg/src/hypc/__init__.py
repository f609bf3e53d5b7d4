"""Hypergeometric functions of the complex field ``pGq`` and the gamma function ``gamma_c``."""
from .gamma import beta_c, gamma_c, gamma_c_asymptotic, gamma_c_value, log_gamma_complex
from .identities import VerificationReport, run_suite
from .kernel import GParams, classify_convergence, detect_collisions, kernel_eval
from .lattice import LambdaList, LambdaPoint, double_power, dpow
from .quadrature import QuadConfig, convolve_g, g_eval_quad, mellin_forward
from .residue import EvalResult, g_eval_series, sigma_minus, sigma_plus
from .series import hyp_pfq

__all__ = [
    "LambdaPoint", "LambdaList", "double_power", "dpow",
    "gamma_c", "gamma_c_value", "gamma_c_asymptotic", "beta_c", "log_gamma_complex",
    "GParams", "kernel_eval", "classify_convergence", "detect_collisions",
    "hyp_pfq", "EvalResult", "sigma_plus", "sigma_minus", "g_eval_series",
    "QuadConfig", "g_eval_quad", "mellin_forward", "convolve_g",
    "run_suite", "VerificationReport",
]
