# relative
from .reporting import Report as Report
from .reporting import Reporting as Reporting
from .reporting import silent_report as silent_report
