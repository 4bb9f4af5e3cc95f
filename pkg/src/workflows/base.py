from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional

import pandas as pd


class WorkflowStatus(Enum):
    """Workflow status enumeration"""
    INITIATED = "initiated"
    COMPLETED = "completed"
    FAILED = "failed"


@dataclass(frozen=True)
class PlotSpec:
    """Line chart drawn from one result table"""
    name: str
    table: str
    x: str
    y: List[str]
    x_label: str
    y_label: str
    group_by: Optional[str] = None
    log_x: bool = False


@dataclass
class WorkflowResult:
    """
    Tables produced by a workflow, keyed by output file stem

    Tables are inserted in the order they are written; plots refer to
    tables by key.
    """
    workflow: str
    tables: Dict[str, pd.DataFrame] = field(default_factory=dict)
    plots: List[PlotSpec] = field(default_factory=list)
    steps_completed: List[str] = field(default_factory=list)
    highlights: Dict[str, object] = field(default_factory=dict)
    status: WorkflowStatus = WorkflowStatus.INITIATED
    diverged: bool = False

    def add_table(self, name: str, frame: pd.DataFrame, step: Optional[str] = None):
        self.tables[name] = frame
        self.steps_completed.append(step or name)
