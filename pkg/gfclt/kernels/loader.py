import json
import logging
from pathlib import Path
from typing import Callable, Dict, Optional, Union

from gfclt.enums import DerivMode, KernelType
from gfclt.exceptions import KernelSpecError
from gfclt.kernels.defant import make_defant_kernel
from gfclt.kernels.iid import DiscreteDist, make_iid_kernel
from gfclt.kernels.kernel import Kernel
from gfclt.kernels.tabulated import make_series_kernel

logger = logging.getLogger(__name__)


def load_kernel_spec(source: Union[str, Path, dict]) -> dict:
    """
    Read a kernel spec from a JSON file path or an inline JSON string, e.g.
        {"type": "iid", "support": [0, 1], "probs": [0.5, 0.5]}
        {"type": "defant", "trunc": 64}
        {"type": "series", "which": "g", "coeffs": [[0, 0, 1, 0], [0, 1, -1, 0], ...]}
    """
    if isinstance(source, dict):
        return dict(source)

    text = str(source).strip()
    if not text.startswith("{"):
        path = Path(text)
        if not path.is_file():
            raise KernelSpecError(f"Kernel spec '{text}' is neither a file nor inline JSON")
        text = path.read_text()

    try:
        spec = json.loads(text)
    except json.JSONDecodeError as e:
        raise KernelSpecError(f"Kernel spec is not valid JSON: {e}")

    if not isinstance(spec, dict):
        raise KernelSpecError("Kernel spec must be a JSON object")
    return spec


def _common(spec: dict) -> dict:
    options = {}
    for key in ("x_box", "z_radius"):
        if key in spec:
            options[key] = float(spec[key])
    if "deriv_mode" in spec:
        options["deriv_mode"] = DerivMode.from_str(spec["deriv_mode"])
    return options


def _build_iid(spec: dict, trunc: Optional[int]) -> Kernel:
    if "support" not in spec or "probs" not in spec:
        raise KernelSpecError("iid kernel spec needs 'support' and 'probs'")
    return make_iid_kernel(DiscreteDist(spec["support"], spec["probs"]), **_common(spec))


def _build_defant(spec: dict, trunc: Optional[int]) -> Kernel:
    # an explicit trunc (CLI flag) wins over the file
    trunc = trunc if trunc is not None else spec.get("trunc")
    return make_defant_kernel(trunc, **_common(spec))


def _build_series(spec: dict, trunc: Optional[int]) -> Kernel:
    if "coeffs" not in spec:
        raise KernelSpecError("series kernel spec needs 'coeffs' rows [m, n, re, im]")
    try:
        return make_series_kernel(spec["coeffs"], which=spec.get("which", "g"), **_common(spec))
    except (TypeError, ValueError) as e:
        raise KernelSpecError(f"Bad series coefficients: {e}")


KERNEL_BUILDERS: Dict[KernelType, Callable[[dict, Optional[int]], Kernel]] = {
    KernelType.iid: _build_iid,
    KernelType.defant: _build_defant,
    KernelType.series: _build_series,
}


def build_kernel(spec: Union[str, Path, dict], trunc: Optional[int] = None) -> Kernel:
    spec = load_kernel_spec(spec)
    try:
        kind = KernelType.from_str(spec.get("type", ""))
    except ValueError:
        raise KernelSpecError(f"Unknown kernel type {spec.get('type')!r}, expected one of {KernelType.namelist()}")

    try:
        kernel = KERNEL_BUILDERS[kind](spec, trunc)
    except KernelSpecError:
        raise
    except (TypeError, ValueError) as e:
        raise KernelSpecError(f"Invalid {kind.value} kernel spec: {e}")

    logger.debug(f"Built kernel '{kernel.name}' (deriv_mode={kernel.deriv_mode.value})")
    return kernel
