"""Node for extracting fraction sequences from Ford circles."""

import os
import sys
from typing import Any

from griptape_nodes.exe_types.core_types import Parameter, ParameterMode, ParameterTypeBuiltin
from griptape_nodes.traits.options import Options

# Add the repository root to path when Griptape loads this file directly
package_root = os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
if package_root not in sys.path:
    sys.path.insert(0, package_root)

from fordseq import sequences, serialization
from fordseq.cli import parse_rational
from fordseq.constants import AFFINE_MODES, SEQUENCE_FORMATS
from fordseq.errors import DomainError, UsageError
from fordseq.nodes.base_ford_node import BaseFordNode


class FordExtractNode(BaseFordNode):
    """Node listing the fractions whose Ford circles a line y = x/m (+ b) touches."""

    def __init__(self, name: str, metadata: dict[Any, Any] | None = None) -> None:
        """Initialize the Ford extract node.

        Args:
            name: Node instance name
            metadata: Optional metadata dictionary
        """
        super().__init__(name, metadata, output_formats=SEQUENCE_FORMATS)

        self._add_ranged_int("m", "m", 32, "Slope denominator of the line y = x/m", "m")

        # Optional intercept
        self.add_parameter(
            Parameter(
                name="b",
                tooltip="Intercept p/q in (0, 1). Leave empty for the line through the origin.",
                type=ParameterTypeBuiltin.STR.value,
                default_value="",
                allowed_modes={ParameterMode.INPUT, ParameterMode.PROPERTY},
                ui_options={"display_name": "Intercept b", "placeholder_text": "e.g. 1/9"},
            )
        )

        self.add_parameter(
            Parameter(
                name="mode",
                tooltip="Affine-line test: exact distance comparison or the simplified pq + m q^2 b <= m condition.",
                type=ParameterTypeBuiltin.STR.value,
                default_value=AFFINE_MODES[0],
                allowed_modes={ParameterMode.PROPERTY},
                traits={Options(choices=AFFINE_MODES)},
                ui_options={"display_name": "Affine Mode"},
            )
        )

        self._add_output_parameters()

    def _add_extra_outputs(self) -> None:
        self.add_parameter(
            Parameter(
                name="count",
                tooltip="Number of extracted fractions",
                type=ParameterTypeBuiltin.INT.value,
                output_type=ParameterTypeBuiltin.INT.value,
                allowed_modes={ParameterMode.OUTPUT},
                ui_options={"display_name": "Count"},
            )
        )

    def _compute(self) -> None:
        m = self.get_parameter_value("m")
        b_text = (self.get_parameter_value("b") or "").strip()
        if b_text:
            try:
                b = parse_rational(b_text)
            except UsageError as e:
                raise DomainError(str(e)) from e
            result = sequences.extract_affine(m, b, self.get_parameter_value("mode"))
        else:
            result = sequences.extract_origin(m)

        self.parameter_output_values["result"] = serialization.encode_sequence(
            result.fractions, self.get_parameter_value("output_format")
        )
        self.parameter_output_values["count"] = result.count
        self._update_status(f"Extracted {result.count} fractions", show=True)
