from .checks import SelfCheckReport, kernel_self_check
from .defant import DefantKernel, DefantSeries, defant_series, make_defant_kernel
from .iid import DiscreteDist, IidKernel, make_iid_kernel
from .kernel import Kernel, KernelJet
from .loader import KERNEL_BUILDERS, build_kernel, load_kernel_spec
from .tabulated import SeriesKernel, make_series_kernel
