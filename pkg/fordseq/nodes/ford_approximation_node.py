"""Node comparing exact cardinalities with the three log-linear approximations."""

import os
import sys
from typing import Any

from griptape_nodes.exe_types.core_types import Parameter, ParameterMode, ParameterTypeBuiltin

# Add the repository root to path when Griptape loads this file directly
package_root = os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
if package_root not in sys.path:
    sys.path.insert(0, package_root)

from fordseq import approx, serialization
from fordseq.constants import REPORT_CSV_COLUMNS, REPORT_DEFAULTS
from fordseq.nodes.base_ford_node import BaseFordNode


class FordApproximationNode(BaseFordNode):
    """Node producing an error report of a1, a2, a3 over a range of m."""

    def __init__(self, name: str, metadata: dict[Any, Any] | None = None) -> None:
        """Initialize the Ford approximation node.

        Args:
            name: Node instance name
            metadata: Optional metadata dictionary
        """
        super().__init__(name, metadata, output_formats=["csv"])

        self._add_ranged_int("m_from", "from", 1000, "First m of the range", "From")
        self._add_ranged_int("m_to", "to", 10000, "Last m of the range", "To")
        self._add_ranged_int("step", "step", REPORT_DEFAULTS["step"], "Spacing between sampled m", "Step")

        self._add_output_parameters()

    def _add_extra_outputs(self) -> None:
        self.add_parameter(
            Parameter(
                name="best",
                tooltip="Approximation with the smallest mean absolute error",
                type=ParameterTypeBuiltin.STR.value,
                output_type=ParameterTypeBuiltin.STR.value,
                allowed_modes={ParameterMode.OUTPUT},
                ui_options={"display_name": "Best Approximation"},
            )
        )

    def validate_before_node_run(self) -> list[Exception] | None:
        """Validate the range in addition to the per-parameter bounds.

        Returns:
            List of validation errors, or None if valid
        """
        errors = super().validate_before_node_run() or []
        m_from = self.get_parameter_value("m_from")
        m_to = self.get_parameter_value("m_to")
        if isinstance(m_from, int) and isinstance(m_to, int) and m_from > m_to:
            errors.append(ValueError(f"From ({m_from}) must not exceed To ({m_to})"))
        return errors if errors else None

    def _compute(self) -> None:
        summary = approx.error_report(
            self.get_parameter_value("m_from"),
            self.get_parameter_value("m_to"),
            self.get_parameter_value("step"),
        )
        rows = summary.rows()
        self.parameter_output_values["result"] = serialization.rows_to_csv(REPORT_CSV_COLUMNS, rows)
        self.parameter_output_values["best"] = summary.best
        self._update_status(f"Compared {len(rows)} values of m; best is {summary.best}", show=True)
