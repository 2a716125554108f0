from .decision_tree import DecisionTree, TreeNode, LEAF, build_tree, mdi_importance, predict, tree_to_text
