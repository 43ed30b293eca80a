"""Scenario builders shared by the test modules (laboratory units in, natural units out)."""
from src.beams import Background, CollisionOffsets, ProbePulse, PumpPulse, Scenario
from src.units import duration, joules, length

STANDARD_PURITY = 5.7e-10


def make_pump(wavelength_nm=800.0, energy_j=30.0, tau_fs=30.0, w0_um=1.0, mode="average", explicit_um=None):
    return PumpPulse(
        wavelength=length(wavelength_nm),
        pulse_energy=joules(energy_j),
        duration=duration(tau_fs),
        waist=length(1e3 * w0_um),
        effective_waist_mode=mode,
        explicit_waist=None if explicit_um is None else length(1e3 * explicit_um),
    )


def make_scenario(
    w1=1.0,
    w2=1.0,
    w0_um=1.0,
    energy_j=30.0,
    wavelength_nm=800.0,
    tau_fs=30.0,
    T_fs=30.0,
    omega_ev=12914.0,
    photons=1e12,
    x0_um=0.0,
    y0_um=0.0,
    z0_um=0.0,
    t0_fs=0.0,
    purity=None,
    background=None,
    mode="average",
    ellipse_angle=0.0,
):
    """
    Standard collision; probe waists w1, w2 are given in units of w0.
    `background` is an optional (b, epsilon) pair.
    """
    pump = make_pump(wavelength_nm, energy_j, tau_fs, w0_um, mode)
    probe = ProbePulse(
        photon_energy=omega_ev,
        photon_count=photons,
        duration=duration(T_fs),
        waist_1=length(1e3 * w1 * w0_um),
        waist_2=length(1e3 * w2 * w0_um),
        ellipse_angle=ellipse_angle,
    )
    offsets = CollisionOffsets(
        x0=length(1e3 * x0_um),
        y0=length(1e3 * y0_um),
        z0=length(1e3 * z0_um),
        t0=duration(t0_fs),
    )
    return Scenario(
        pump=pump,
        probe=probe,
        offsets=offsets,
        purity=purity,
        background=None if background is None else Background(b=background[0], epsilon=background[1]),
    )


def standard_config(**overrides):
    """Raw YAML-shaped config of the standard collision."""
    config = {
        "pump": {
            "wavelength": "800 nm",
            "pulse_energy": "30 J",
            "duration": "30 fs",
            "waist": "1 um",
            "effective_waist": "average",
        },
        "probe": {
            "photon_energy": "12914 eV",
            "photon_count": 1.0e12,
            "duration": "30 fs",
            "waist_1": "1 um",
            "waist_2": "1 um",
        },
    }
    config.update(overrides)
    return config
