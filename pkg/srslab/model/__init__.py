# @Time   : 2026/10/13
# @Author : SRSLab Team

from .tree import DecisionTree, TreeNode, LEAF, build_tree, mdi_importance, predict, tree_to_text
