import math
from dataclasses import dataclass
from typing import NamedTuple, Optional, Tuple

from src.modules.dynamics.state import BodyState
from src.modules.transmission.stiffness import VerticalStiffnessCurve

NO_ANCHOR = math.nan


class ContactForce(NamedTuple):
    """Ground reaction on one foot"""
    normal: float                   # mN, >= 0
    tangential: float               # mN, +x forward
    slip: bool
    anchor_x: Optional[float]       # mm, world stick point (None when airborne)
    foot_x: float = NO_ANCHOR       # mm, world
    foot_z: float = NO_ANCHOR       # mm, world, negative while compressed into the ground
    stored_energy: float = 0.0      # uJ held in the leg springs


@dataclass
class LegContactState:
    """
    Kinematic leg state for contact evaluation

    The leg hangs vertically below its hip; foot_offset is the horizontal
    foot position relative to the hip (mm) and anchor_x the world point the
    foot is stuck to, if any. The integrator
    updates it in place every step.
    """
    hip_x: float                    # mm, body frame
    hip_z: float                    # mm, body frame
    leg_length: float               # mm
    foot_offset: float              # mm
    stiffness_curve: VerticalStiffnessCurve
    tangential_stiffness: float     # N/m
    leg_length_rate: float = 0.0    # mm/s
    foot_offset_rate: float = 0.0   # mm/s
    anchor_x: Optional[float] = None
    damping_ratio: float = 0.0
    supported_mass: float = 0.0     # kg, body share carried by this leg
    tangential_damping: float = 0.0 # N*s/m
    serial_compliance: float = 1.0


def hip_world(body_x: float, body_z: float, pitch: float, hip_x: float, hip_z: float,
              cos_p: Optional[float] = None, sin_p: Optional[float] = None) -> Tuple[float, float, float, float]:
    """World offset (rx, rz) of a body-frame point and its position (px, pz); same length unit in and out"""
    c = math.cos(pitch) if cos_p is None else cos_p
    s = math.sin(pitch) if sin_p is None else sin_p
    rx = hip_x * c - hip_z * s
    rz = hip_x * s + hip_z * c
    return rx, rz, body_x + rx, body_z + rz


def foot_reaction(compression: float, compression_rate: float, foot_x: float, foot_vx: float,
                  anchor_x: float, k_normal: float, c_normal: float,
                  k_tangential: float, c_tangential: float, mu: float) -> Tuple[float, float, bool, float]:
    """
    Spring-leg normal force and stick/slip tangential force (SI units)

    Args:
        compression: Leg compression into the ground (m); <= 0 means airborne
        compression_rate: d(compression)/dt (m/s)
        foot_x: Kinematic foot position (m)
        foot_vx: Kinematic foot velocity (m/s)
        anchor_x: World stick point (m) or NaN when the foot just touched down
        k_normal, c_normal: Vertical leg stiffness (N/m) and damping (N*s/m)
        k_tangential, c_tangential: Horizontal leg stiffness and damping
        mu: Friction coefficient

    Returns:
        (normal N, tangential N, slip flag, updated anchor m or NaN)
    """
    if compression <= 0.0:
        return 0.0, 0.0, False, NO_ANCHOR

    normal = k_normal * compression + c_normal * compression_rate
    if normal <= 0.0:
        return 0.0, 0.0, False, foot_x

    if anchor_x != anchor_x:
        anchor_x = foot_x

    required = k_tangential * (anchor_x - foot_x) - c_tangential * foot_vx
    limit = mu * normal
    if abs(required) <= limit:
        return normal, required, False, anchor_x

    tangential = math.copysign(limit, required)
    # drag the stick point so the spring carries exactly the cone limit
    anchor_x = foot_x + tangential / k_tangential
    return normal, tangential, True, anchor_x


def foot_contact_force(leg: LegContactState, body: BodyState, mu: float) -> ContactForce:
    """
    Ground reaction on one foot

    Normal force is max(0, k_v(z)*delta + c*delta_dot) with k_v from the
    stiffness curve at the current hip height, divided by the serial
    compliance, and c = 2*zeta*sqrt(k_v*m) for the leg's mass share. The
    tangential force sticks inside the friction cone and saturates at mu*N
    otherwise.

    Args:
        leg: Leg kinematics and compliance
        body: Body state
        mu: Friction coefficient

    Returns:
        ContactForce in mN, with the world foot position and spring energy
    """
    rx, rz, hip_px, hip_pz = hip_world(body.x, body.z, body.pitch, leg.hip_x, leg.hip_z)
    foot_x = hip_px + leg.foot_offset
    foot_z = hip_pz - leg.leg_length
    compression_mm = -foot_z
    if compression_mm <= 0.0:
        return ContactForce(0.0, 0.0, False, None, foot_x, foot_z)

    hip_vx = body.x_dot - body.pitch_rate * rz
    hip_vz = body.z_dot + body.pitch_rate * rx
    k_normal = leg.stiffness_curve.stiffness_clamped(hip_pz) / leg.serial_compliance
    c_normal = 2.0 * leg.damping_ratio * math.sqrt(k_normal * leg.supported_mass)
    anchor = NO_ANCHOR if leg.anchor_x is None else leg.anchor_x * 1e-3

    normal, tangential, slip, anchor = foot_reaction(
        compression_mm * 1e-3,
        (leg.leg_length_rate - hip_vz) * 1e-3,
        foot_x * 1e-3,
        (hip_vx + leg.foot_offset_rate) * 1e-3,
        anchor,
        k_normal, c_normal,
        leg.tangential_stiffness, leg.tangential_damping,
        mu,
    )
    anchor_mm = None if anchor != anchor else anchor * 1e3
    # N/m == mN/mm, so these come out in uJ
    energy = 0.5 * k_normal * compression_mm ** 2 + 0.5 * (tangential * 1e3) ** 2 / leg.tangential_stiffness
    return ContactForce(normal * 1e3, tangential * 1e3, slip, anchor_mm, foot_x, foot_z, energy)


def chassis_reaction(penetration: float, penetration_rate: float, slide_velocity: float,
                     stiffness: float, damping: float, mu: float,
                     regularization_velocity: float) -> Tuple[float, float]:
    """
    Chassis support force with regularized Coulomb friction (SI units)

    Returns:
        (normal N, tangential N)
    """
    if penetration <= 0.0:
        return 0.0, 0.0
    normal = stiffness * penetration + damping * penetration_rate
    if normal <= 0.0:
        return 0.0, 0.0
    ratio = slide_velocity / regularization_velocity
    if ratio > 1.0:
        ratio = 1.0
    elif ratio < -1.0:
        ratio = -1.0
    return normal, -mu * normal * ratio
