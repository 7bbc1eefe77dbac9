from .input_signal import InputPiece, InputSignal, input_stack, constant_input, load_input_signal, \
    input_signal_to_dict, random_input_signal
from .trajectory import Trajectory, SwitchRecord, ImpulseRecord, trajectory_columns
from .simulate import expm, simulate, simulate_impulsive, interval_grid
