"""treedistill: decision-tree explanations of black-box classifiers.

The toolkit extracts surrogate decision trees from any classifier that can
label instances, optionally steering split selection with the information
content of concepts from a domain ontology, and measures the result's
accuracy, fidelity, and syntactic complexity.
"""

__version__ = "0.1.0"
