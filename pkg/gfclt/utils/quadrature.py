import math
from typing import Callable

import numpy as np


def circle_nodes(center: complex, radius: float, nodes: int) -> np.ndarray:
    return center + radius * np.exp(2j * np.pi * np.arange(nodes) / nodes)


def cauchy_derivatives(func: Callable, z0: complex, order: int, radius: float, nodes: int = 64) -> np.ndarray:
    """
    Derivatives 0..order of an analytic ``func`` at ``z0`` from the Cauchy integral
        f^(k)(z0) = k! / (2 pi i) * contour integral of f(z) / (z - z0)^(k + 1)
    on the circle |z - z0| = radius, discretised with the trapezoidal rule. ``func`` must accept an array.
    """
    if order >= nodes:
        raise ValueError(f"Need more than {order} nodes for derivative order {order}, got {nodes}")

    values = np.asarray(func(circle_nodes(z0, radius, nodes)), dtype=complex)
    taylor = np.fft.fft(values)[: order + 1] / nodes
    scale = np.array([math.factorial(k) / radius**k for k in range(order + 1)])
    return taylor * scale
