# -*- encoding: utf-8 -*-
# @Time    :   2026/10/16
# @Author  :   SRSLab Team

from loguru import logger

from .metrics import SelectionScore, accuracy, f1_against_truth, f1_curve, f1_curve_table
from .selection_evaluator import SelectionEvaluator

evaluator_register_table = {
    'selection': SelectionEvaluator,
}


def get_evaluator(evaluator_name='selection'):
    if evaluator_name in evaluator_register_table:
        evaluator = evaluator_register_table[evaluator_name]()
        logger.info(f'[Build evaluator {evaluator_name}]')
        return evaluator
    else:
        raise NotImplementedError(f'Evaluator [{evaluator_name}] has not been implemented')
