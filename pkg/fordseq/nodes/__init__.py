"""Ford circle nodes for Griptape."""

from fordseq.nodes.base_ford_node import BaseFordNode
from fordseq.nodes.ford_approximation_node import FordApproximationNode
from fordseq.nodes.ford_cardinality_node import FordCardinalityNode
from fordseq.nodes.ford_extract_node import FordExtractNode

__all__ = ["BaseFordNode", "FordExtractNode", "FordCardinalityNode", "FordApproximationNode"]
