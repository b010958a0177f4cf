from .textutils import (print_progress, print_dynamic,
                        interval_statistics_table)
