import math

import numpy as np
from loguru import logger

from src.core.decorators import log_execution_time
from src.core.exceptions import SimulationDivergenceError, ValidationException
from src.modules.dynamics.actuator import actuator_energy, actuator_step, static_displacement
from src.modules.dynamics.contact import LegContactState, chassis_reaction, foot_contact_force
from src.modules.dynamics.robot import LegSpec, RobotSpec
from src.modules.dynamics.state import BodyState, SimConfig
from src.modules.dynamics.trajectory import Trajectory
from src.modules.gait.drive import channel_offsets, synthesize_drive
from src.modules.gait.phase_table import GaitProgram, Leg, validate_gait
from src.modules.sensing.currents import attach_currents

MODULE = "DYNAMICS"
TWO_PI = 2 * math.pi
# initial clearance above the highest support (mm)
DROP_CLEARANCE = 0.01


class _Leg:
    """One projected leg: its two actuator models and the contact state the integrator updates"""

    __slots__ = ('lift', 'swing', 'rest', 'swing_mid', 'contact')

    def __init__(self, robot: RobotSpec, spec: LegSpec, voltage: float):
        self.lift = spec.lift
        self.swing = spec.swing
        self.rest = robot.rest_length
        # foot sits under the hip at half drive
        self.swing_mid = static_displacement(spec.swing, 0.5 * voltage)

        share = robot.total_mass_kg / 4.0
        k_t = spec.swing.leg_stiffness
        self.contact = LegContactState(
            hip_x=spec.hip_x, hip_z=spec.hip_z,
            leg_length=self.rest, foot_offset=0.0,
            stiffness_curve=spec.stiffness_curve,
            tangential_stiffness=k_t,
            damping_ratio=robot.contact_damping_ratio,
            supported_mass=share,
            tangential_damping=2.0 * robot.contact_damping_ratio * math.sqrt(k_t * share),
            serial_compliance=robot.serial_compliance,
        )

    def pose(self, q_lift: float, qd_lift: float, q_swing: float, qd_swing: float) -> LegContactState:
        """Leg length and foot offset (mm) from the actuator states (m)"""
        c = self.contact
        c.leg_length = (self.rest * 1e-3 + self.lift.transmission_ratio * q_lift) * 1e3
        c.leg_length_rate = self.lift.transmission_ratio * qd_lift * 1e3
        c.foot_offset = -self.swing.transmission_ratio * (q_swing - self.swing_mid) * 1e3
        c.foot_offset_rate = -self.swing.transmission_ratio * qd_swing * 1e3
        return c


def initial_height(robot: RobotSpec, program: GaitProgram) -> float:
    """Body height (mm) just above the chassis support and the fully extended legs"""
    full_extension = max(
        robot.rest_length + leg.lift.quasi_static_gain * program.voltage * 1e-3 - leg.hip_z
        for leg in robot.legs
    )
    belly = robot.belly_height - max(leg.hip_z for leg in robot.legs)
    return max(belly, full_extension) + DROP_CLEARANCE


@log_execution_time("simulate")
def simulate(robot: RobotSpec, program: GaitProgram, cfg: SimConfig, repetition: int = 0) -> Trajectory:
    """
    Integrate the planar body, four projected legs and eight actuators

    The body moves in x, z and pitch. Each lift actuator sets its leg length
    and each swing actuator the horizontal foot offset; feet touching the
    ground push back through the vertical stiffness curve and a horizontal
    spring limited by the friction cone, and the same reactions load the
    actuators through the transmission ratio. The chassis underside rests on
    a compliant support when the hips drop below belly_height.

    Args:
        robot: Robot description
        program: Gait program (validated against the robot's rated voltage)
        cfg: Integration settings
        repetition: Index that selects the per-run perturbation draw

    Returns:
        Trajectory sampled every cfg.sample_every steps, currents included

    Raises:
        ValidationException: invalid program
        DomainError: explicit timestep above the stability limit
        SimulationDivergenceError: the state stopped being finite
    """
    ok, violations = validate_gait(program, robot.rated_voltage)
    if not ok:
        raise ValidationException(MODULE, f"invalid gait program: {violations}")

    f = program.frequency
    dt = cfg.resolve_timestep(f, robot.max_natural_frequency)
    duration = cfg.run_duration(f)
    n_steps = int(round(duration / dt))
    every = cfg.sample_every(dt, f)
    n_samples = n_steps // every + 1

    rng = np.random.default_rng([cfg.seed, repetition])
    phase_draw = rng.uniform(0.0, 1.0)
    jitter_draw = rng.uniform(-1.0, 1.0)
    t_offset = phase_draw / f if cfg.randomize_phase else 0.0

    logger.debug(
        f"Simulating {robot.name} {program.gait_name} at {f} Hz, {program.voltage} V: "
        f"dt={dt:.3g} s, {n_steps} steps, sample every {every}, rep {repetition}"
    )

    # ==================== CONSTANTS ====================
    g = cfg.gravity
    mass = robot.total_mass_kg
    inertia = robot.pitch_inertia
    mu = robot.mu
    by_position = robot.legs_by_position()
    legs = [_Leg(robot, by_position[leg], program.voltage) for leg in Leg]
    models = [m for leg in legs for m in (leg.lift, leg.swing)]

    hip_xs = [leg.contact.hip_x * 1e-3 for leg in legs]
    belly_z = (max(leg.contact.hip_z for leg in legs) - robot.belly_height) * 1e-3
    chassis_points = ((max(hip_xs), belly_z), (min(hip_xs), belly_z))
    k_b = robot.chassis.stiffness
    c_b = 2.0 * robot.chassis.damping_ratio * math.sqrt(k_b * mass / 2.0)
    mu_b = robot.chassis.friction
    v_reg = cfg.regularization_velocity * 1e-3

    offsets = [float(o) for o in channel_offsets(program)]
    half_v = 0.5 * program.voltage
    omega = TWO_PI * f

    # ==================== INITIAL STATE ====================
    v0 = synthesize_drive(program, t_offset)
    q = [static_displacement(m, v) for m, v in zip(models, v0)]
    qd = [0.0] * 8

    z0_mm = cfg.initial_height if cfg.initial_height is not None else initial_height(robot, program)
    z0_mm += cfg.initial_jitter * jitter_draw
    x, z, th = 0.0, z0_mm * 1e-3, 0.0
    vx, vz, w = 0.0, 0.0, 0.0

    # ==================== RECORDS ====================
    rec_t = np.empty(n_samples)
    rec_body = np.empty((n_samples, 6))
    rec_fx = np.empty((n_samples, 4))
    rec_fz = np.empty((n_samples, 4))
    rec_contact = np.zeros((n_samples, 4), dtype=bool)
    rec_slip = np.zeros((n_samples, 4), dtype=bool)
    rec_chassis = np.zeros(n_samples, dtype=bool)
    rec_q = np.empty((n_samples, 8))
    rec_qd = np.empty((n_samples, 8))
    rec_v = np.empty((n_samples, 8))
    rec_energy = np.empty(n_samples)

    volts = [0.0] * 8
    loads = [0.0] * 8
    forces = [None] * 4

    sample = 0
    for n in range(n_steps + 1):
        t = n * dt
        arg = omega * (t + t_offset)
        for ch in range(8):
            volts[ch] = half_v * (1.0 + math.sin(arg + offsets[ch]))

        fx_total = 0.0
        fz_total = -mass * g
        torque = 0.0

        # ---- feet ----
        body = BodyState(x * 1e3, z * 1e3, th, vx * 1e3, vz * 1e3, w)
        for i, leg in enumerate(legs):
            li, si = 2 * i, 2 * i + 1
            state = leg.pose(q[li], qd[li], q[si], qd[si])
            force = foot_contact_force(state, body, mu)
            state.anchor_x = force.anchor_x
            forces[i] = force

            normal = force.normal * 1e-3
            tangential = force.tangential * 1e-3
            fx_total += tangential
            fz_total += normal
            torque += (force.foot_x * 1e-3 - x) * normal + z * tangential
            # reactions seen by the actuators, through the leg kinematics
            loads[li] = -leg.lift.transmission_ratio * normal
            loads[si] = -leg.swing.transmission_ratio * tangential

        # ---- chassis support ----
        chassis_touch = False
        chassis_energy = 0.0
        cos_p = math.cos(th)
        sin_p = math.sin(th)
        for bx, bz in chassis_points:
            rx = bx * cos_p - bz * sin_p
            rz = bx * sin_p + bz * cos_p
            penetration = -(z + rz)
            if penetration > 0.0:
                normal, tangential = chassis_reaction(
                    penetration, -(vz + w * rx), vx - w * rz, k_b, c_b, mu_b, v_reg,
                )
                fx_total += tangential
                fz_total += normal
                torque += rx * normal - rz * tangential
                chassis_touch = True
                chassis_energy += 0.5 * k_b * penetration ** 2

        # ---- record ----
        if n % every == 0:
            rec_t[sample] = t
            rec_body[sample] = (x * 1e3, z * 1e3, th, vx * 1e3, vz * 1e3, w)
            rec_fx[sample] = [c.foot_x for c in forces]
            rec_fz[sample] = [c.foot_z for c in forces]
            rec_contact[sample] = [c.normal > 0.0 for c in forces]
            rec_slip[sample] = [c.slip for c in forces]
            rec_chassis[sample] = chassis_touch
            rec_q[sample] = [qq * 1e3 for qq in q]
            rec_qd[sample] = [qv * 1e3 for qv in qd]
            rec_v[sample] = volts
            kinetic = 0.5 * mass * (vx * vx + vz * vz) + 0.5 * inertia * w * w
            actuators = sum(actuator_energy(m, qq, qv) for m, qq, qv in zip(models, q, qd))
            rec_energy[sample] = ((kinetic + mass * g * z + chassis_energy + actuators) * 1e6
                                  + sum(c.stored_energy for c in forces))
            sample += 1

        if n == n_steps:
            break

        # ---- actuators ----
        try:
            for ch in range(8):
                q[ch], qd[ch] = actuator_step(models[ch], q[ch], qd[ch], volts[ch], loads[ch], dt)
        except SimulationDivergenceError as exc:
            logger.error(f"{robot.name} {program.gait_name} at {f} Hz diverged at step {n + 1}")
            raise SimulationDivergenceError(MODULE, "actuator state is no longer finite", n + 1, (n + 1) * dt) from exc

        # ---- body ----
        vx += fx_total / mass * dt
        vz += fz_total / mass * dt
        w += torque / inertia * dt
        x += vx * dt
        z += vz * dt
        th += w * dt

        if not math.isfinite(x + z + th + vx + vz + w):
            logger.error(f"{robot.name} {program.gait_name} at {f} Hz diverged at step {n + 1}")
            raise SimulationDivergenceError(MODULE, "state is no longer finite", n + 1, (n + 1) * dt)

    trajectory = Trajectory(
        time=rec_t, body=rec_body, foot_x=rec_fx, foot_z=rec_fz,
        contact=rec_contact, slip=rec_slip, chassis_contact=rec_chassis,
        displacement=rec_q, velocity=rec_qd, voltage=rec_v, current=np.zeros((n_samples, 8)),
        energy=rec_energy, timestep=dt, sample_every=every,
        meta={
            'robot': robot.name,
            'gait': program.gait_name,
            'frequency': f,
            'voltage': program.voltage,
            'payload': robot.payload,
            'body_length': robot.body.body_length,
            'total_mass': robot.total_mass,
            'repetition': repetition,
            'time_offset': t_offset,
        },
    )
    logger.debug(
        f"{robot.name} {program.gait_name} {f} Hz: advanced {rec_body[-1, 0] - rec_body[0, 0]:.3f} mm "
        f"in {rec_t[-1]:.3f} s"
    )
    return attach_currents(trajectory, robot)
