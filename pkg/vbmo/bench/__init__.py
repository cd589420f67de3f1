# This program is free software; you can redistribute it and/or
# modify it under the terms of the GNU General Public License
# as published by the Free Software Foundation; either version 2
# of the License, or (at your option) any later version.

# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.

# You should have received a copy of the GNU General Public License
# along with this program; if not, write to the Free Software
# Foundation, Inc., 51 Franklin Street, Fifth Floor, Boston,
# MA  02110-1301, USA.

from .sampling import sample_pairs
from .stats import wilcoxon_signed_rank
from .harness import (ExperimentConfig, ExperimentRecord, ExperimentResult,
                      run_experiment, score_selected_plan)
from .report import (Summary, summarize, summarize_result, classify_maps,
                     selection_table, table_rows, write_outputs,
                     write_records, write_rows)

__all__ = [
    'sample_pairs',
    'wilcoxon_signed_rank',
    'ExperimentConfig',
    'ExperimentRecord',
    'ExperimentResult',
    'run_experiment',
    'score_selected_plan',
    'Summary',
    'summarize',
    'summarize_result',
    'classify_maps',
    'selection_table',
    'table_rows',
    'write_outputs',
    'write_records',
    'write_rows'
]
