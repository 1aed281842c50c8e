"""normalsv — European calls under normal dynamics with CIR stochastic variance.

Pricing backends: closed-form characteristic function with Carr–Madan FFT,
adaptive quadrature, and Monte-Carlo; plus Bachelier implied-vol surfaces.
"""

__version__ = "0.1.0"
