from .property_suite import run_property_suite, suite_passed, suite_columns
from .check_list import checks_full_list, check_dict, get_checks_list
from .check_classes import PropertyCheck, CheckData
