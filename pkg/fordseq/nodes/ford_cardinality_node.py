"""Node for counting F_{1/m} and its jump at m."""

import json
import os
import sys
from typing import Any

from griptape_nodes.exe_types.core_types import Parameter, ParameterMode, ParameterTypeBuiltin
from griptape_nodes.traits.options import Options

# Add the repository root to path when Griptape loads this file directly
package_root = os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
if package_root not in sys.path:
    sys.path.insert(0, package_root)

from fordseq import counting
from fordseq.constants import CARDINALITY_METHODS
from fordseq.nodes.base_ford_node import BaseFordNode


class FordCardinalityNode(BaseFordNode):
    """Node evaluating |F_{1/m}| with a chosen formula, plus the jump S_m."""

    def __init__(self, name: str, metadata: dict[Any, Any] | None = None) -> None:
        super().__init__(name, metadata, output_formats=["text", "json"])

        self._add_ranged_int("m", "m", 32, "Slope denominator of the line y = x/m", "m")

        self.add_parameter(
            Parameter(
                name="method",
                tooltip="Exact omega sum, squarefree divisor sum, brute-force extraction, or per-numerator columns.",
                type=ParameterTypeBuiltin.STR.value,
                default_value=CARDINALITY_METHODS[0],
                allowed_modes={ParameterMode.PROPERTY},
                traits={Options(choices=CARDINALITY_METHODS)},
                ui_options={"display_name": "Method"},
            )
        )

        self._add_output_parameters()

    def _add_extra_outputs(self) -> None:
        self.add_parameter(
            Parameter(
                name="jump",
                tooltip="S_m = |F_{1/m}| - |F_{1/(m-1)}|",
                type=ParameterTypeBuiltin.INT.value,
                output_type=ParameterTypeBuiltin.INT.value,
                allowed_modes={ParameterMode.OUTPUT},
                ui_options={"display_name": "Jump"},
            )
        )

    def _compute(self) -> None:
        m = self.get_parameter_value("m")
        method = self.get_parameter_value("method")
        value = counting.cardinality(m, method)
        record = counting.jump(m)

        if self.get_parameter_value("output_format") == "json":
            self.parameter_output_values["result"] = json.dumps(
                {"m": m, "method": method, "cardinality": value, "jump": record.s_m, "omega": record.omega_m}
            )
        else:
            self.parameter_output_values["result"] = str(value)
        self.parameter_output_values["jump"] = record.s_m
        self._update_status(f"|F_1/{m}| = {value} ({method})", show=True)
