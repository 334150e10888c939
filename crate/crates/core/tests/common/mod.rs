#![allow(dead_code)]

use camscat_core::fields::{presets, EffectivePotential, Medium};
use camscat_core::radial::RadialGrid;

pub const R0: f64 = presets::R0;
pub const R: f64 = presets::R;

/// `(l, Re β, Im β, δ_l)` for `V = 0.3` on `[0.5, 2]`, no field, from
/// `oracle/step_matching.py` (two-region matching at 40 digits).
pub const STEP_ORACLE: [(i64, f64, f64, f64); 11] = [
    (0, 0.561_123_233_764_445_4, -0.911_491_850_598_120_5, -1.337_216_395_534_640_8),
    (1, 1.421_991_105_480_311, -0.719_408_627_655_090_7, -0.317_028_640_484_545_5),
    (2, 3.831_683_850_662_271_5, 4.204_468_248_321_721, -0.046_355_188_570_205_78),
    (3, -29.416_415_797_028_04, 29.171_259_391_398_497, -0.004_184_412_062_776_858),
    (4, -336.865_835_976_047_5, -337.018_930_298_355_5, -0.000_227_181_748_773_736_74),
    (5, 5_275.596_972_869_601, -5_275.512_287_231_681, -8.026_230_781_042_352e-6),
    (6, 104_116.170_354_241_71, 104_116.211_848_558_29, -1.992_692_785_478_193_5e-7),
    (7, -2_476_092.562_138_085_7, 2_476_092.543_951_015, -3.672_534_528_788_876e-9),
    (8, -68_869_048.805_110_29, -68_869_048.812_311_88, -5.228_465_210_344_415e-11),
    (9, 2_192_570_836.336_925, -2_192_570_836.334_326_3, -5.926_337_839_492_068e-13),
    (10, 78_613_962_096.955_82, 78_613_962_096.956_68, -5.476_756_528_848_251e-15),
];

pub fn potential(m: Medium) -> EffectivePotential {
    EffectivePotential::from_medium(m).expect("valid medium")
}

pub fn grid(q: &EffectivePotential, n: usize) -> RadialGrid {
    RadialGrid::for_potential(q, n).expect("valid grid")
}

/// The three reference media: bump field with step potential, a pure
/// Aharonov–Bohm configuration, and a spline potential with a reversed
/// field.
pub fn reference_media() -> Vec<(&'static str, EffectivePotential)> {
    vec![
        ("bump+step", potential(presets::bump_step(0.3).unwrap())),
        ("aharonov-bohm", potential(presets::aharonov_bohm(0.5).unwrap())),
        ("spline+bump", potential(presets::spline_bump(-0.4).unwrap())),
    ]
}
