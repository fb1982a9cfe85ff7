"""Base node for Ford circle computations."""

import logging
import os
import sys
from typing import Any

from griptape_nodes.exe_types.core_types import Parameter, ParameterMode, ParameterTypeBuiltin
from griptape_nodes.exe_types.node_types import AsyncResult, ControlNode
from griptape_nodes.traits.options import Options
from griptape_nodes.traits.slider import Slider

# Add the repository root to path when Griptape loads this file directly
package_root = os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
if package_root not in sys.path:
    sys.path.insert(0, package_root)

from fordseq.constants import PARAMETER_RANGES
from fordseq.errors import FordError

logger = logging.getLogger(__name__)


class BaseFordNode(ControlNode):
    """Base class for all Ford circle nodes."""

    def __init__(self, name: str, metadata: dict[Any, Any] | None = None, output_formats: list[str] | None = None) -> None:
        """Initialize the base Ford node.

        Args:
            name: Node instance name
            metadata: Optional metadata dictionary
            output_formats: Choices for the output_format property; the first is the default
        """
        super().__init__(name, metadata)
        # Parameter name -> PARAMETER_RANGES key, checked by validate_before_node_run
        self._ranged: dict[str, str] = {}
        formats = output_formats or ["text"]
        self.add_parameter(
            Parameter(
                name="output_format",
                tooltip="Format of the result output",
                type=ParameterTypeBuiltin.STR.value,
                default_value=formats[0],
                allowed_modes={ParameterMode.PROPERTY},
                traits={Options(choices=formats)},
                ui_options={"display_name": "Output Format"},
            )
        )

    def _add_ranged_int(self, name: str, range_key: str, default: int, tooltip: str, display_name: str) -> None:
        low, high = PARAMETER_RANGES[range_key]
        self.add_parameter(
            Parameter(
                name=name,
                tooltip=tooltip,
                type=ParameterTypeBuiltin.INT.value,
                default_value=default,
                allowed_modes={ParameterMode.INPUT, ParameterMode.PROPERTY},
                traits={Slider(min_val=low, max_val=high)},
                ui_options={"display_name": display_name},
            )
        )
        self._ranged[name] = range_key

    def _add_output_parameters(self) -> None:
        """Add output parameters after configuration parameters.

        Subclasses call this after adding their own parameters so the order is:
        1. Input parameters
        2. Configuration parameters
        3. Output parameters
        4. Status parameter
        """
        self.add_parameter(
            Parameter(
                name="result",
                tooltip="Encoded result",
                type=ParameterTypeBuiltin.STR.value,
                output_type=ParameterTypeBuiltin.STR.value,
                allowed_modes={ParameterMode.OUTPUT},
                ui_options={"display_name": "Result", "multiline": True, "pulse_on_run": True},
            )
        )
        self._add_extra_outputs()

        # Status message for user feedback (always last)
        self.add_parameter(
            Parameter(
                name="status",
                tooltip="Processing status and messages",
                type="str",
                allowed_modes={ParameterMode.OUTPUT},
                ui_options={
                    "multiline": True,
                    "hide": False,
                    "display_name": "Status",
                    "placeholder_text": "Status messages",
                },
            )
        )

    def _add_extra_outputs(self) -> None:
        """Hook for node-specific outputs placed between result and status."""

    def _update_status(self, message: str, show: bool = True) -> None:
        """Update the status parameter with a message.

        Args:
            message: Status message to display
            show: Whether to show the status parameter in UI
        """
        self.set_parameter_value("status", message)
        status_param = self.get_parameter_by_name("status")
        if status_param and hasattr(status_param, "_ui_options"):
            status_param._ui_options["hide"] = not show

    def validate_before_node_run(self) -> list[Exception] | None:
        """Check every ranged integer parameter against PARAMETER_RANGES.

        Returns:
            List of validation errors, or None if valid
        """
        errors: list[Exception] = []
        for name, range_key in self._ranged.items():
            value = self.get_parameter_value(name)
            if value is None:
                continue
            low, high = PARAMETER_RANGES[range_key]
            if not isinstance(value, int) or not low <= value <= high:
                errors.append(ValueError(f"{name} must be an integer between {low} and {high}, got {value!r}"))
        return errors if errors else None

    def validate_before_workflow_run(self) -> list[Exception] | None:
        return self.validate_before_node_run()

    def process(self) -> AsyncResult[None]:
        """Non-blocking entry point for Griptape engine."""
        yield lambda: self._process_sync()

    def _process_sync(self) -> None:
        """Run the computation and report its outcome through the status output."""
        label = type(self).__name__
        try:
            self._update_status("Computing...", show=True)
            self._compute()
        except FordError as e:
            error_message = f"Error in {label}: {e}"
            logger.debug(error_message)
            self._update_status(error_message, show=True)
            raise ValueError(error_message) from e

    def _compute(self) -> None:
        """Abstract compute method - must be implemented by subclasses."""
        raise NotImplementedError("Subclasses must implement the _compute method")
