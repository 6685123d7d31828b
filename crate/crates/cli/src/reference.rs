use quarter_median::{EstimatorId, Family};

/// One row of the published simulation table (r = 10⁴, n = 100,
/// `Σ = diag(1, λ)`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PublishedRow {
    pub lambda: f64,
    pub family: Family,
    pub estimator: EstimatorId,
    pub m_hat: [f64; 2],
    pub l_hat: [f64; 2],
}

pub const LAMBDAS: [f64; 4] = [0.01, 0.1, 0.5, 0.9];
pub const FAMILIES: [Family; 4] = [Family::Normal, Family::DoubleExponential, Family::Pearson2, Family::Logistic];
pub const ESTIMATORS: [EstimatorId; 4] = [EstimatorId::Smed, EstimatorId::Omed, EstimatorId::Tmed, EstimatorId::Qmed];
pub const PUBLISHED_REPS: usize = 10_000;

const fn row(lambda: f64, family: Family, estimator: EstimatorId, v: [f64; 4]) -> PublishedRow {
    PublishedRow { lambda, family, estimator, m_hat: [v[0], v[1]], l_hat: [v[2], v[3]] }
}

#[rustfmt::skip]
pub const PUBLISHED: [PublishedRow; 64] = [
    row(0.01, Family::Normal, EstimatorId::Smed, [0.009648, -0.002215, 1.453955, 0.019903]),
    row(0.01, Family::Normal, EstimatorId::Omed, [0.001726, -0.001769, 1.282321, 0.012935]),
    row(0.01, Family::Normal, EstimatorId::Tmed, [-0.000700, -0.001661, 1.311815, 0.013135]),
    row(0.01, Family::Normal, EstimatorId::Qmed, [0.010454, -0.001571, 1.558638, 0.015973]),
    row(0.01, Family::DoubleExponential, EstimatorId::Smed, [0.062843, 0.000282, 9.651512, 0.132048]),
    row(0.01, Family::DoubleExponential, EstimatorId::Omed, [0.047608, -0.001115, 8.376979, 0.084180]),
    row(0.01, Family::DoubleExponential, EstimatorId::Tmed, [0.041778, -0.001260, 8.548116, 0.085507]),
    row(0.01, Family::DoubleExponential, EstimatorId::Qmed, [0.066367, 0.000427, 10.363242, 0.102538]),
    row(0.01, Family::Pearson2, EstimatorId::Smed, [-0.002203, 0.000669, 0.227956, 0.003093]),
    row(0.01, Family::Pearson2, EstimatorId::Omed, [-0.000128, 0.000219, 0.201077, 0.001999]),
    row(0.01, Family::Pearson2, EstimatorId::Tmed, [0.000433, 0.000230, 0.205588, 0.002041]),
    row(0.01, Family::Pearson2, EstimatorId::Qmed, [-0.003445, 0.000139, 0.243375, 0.002450]),
    row(0.01, Family::Logistic, EstimatorId::Smed, [-0.004630, -0.000134, 1.245813, 0.017274]),
    row(0.01, Family::Logistic, EstimatorId::Omed, [-0.014100, -0.000211, 1.102237, 0.010843]),
    row(0.01, Family::Logistic, EstimatorId::Tmed, [-0.014277, -0.000292, 1.127860, 0.011012]),
    row(0.01, Family::Logistic, EstimatorId::Qmed, [-0.001921, -0.000723, 1.326942, 0.013266]),
    row(0.1, Family::Normal, EstimatorId::Smed, [0.003782, -0.002045, 1.347796, 0.139426]),
    row(0.1, Family::Normal, EstimatorId::Omed, [0.002807, -0.000513, 1.290243, 0.127393]),
    row(0.1, Family::Normal, EstimatorId::Tmed, [0.004400, -0.001163, 1.316496, 0.129837]),
    row(0.1, Family::Normal, EstimatorId::Qmed, [0.001002, -0.002581, 1.550401, 0.157899]),
    row(0.1, Family::DoubleExponential, EstimatorId::Smed, [-0.024886, -0.014379, 8.864224, 0.937143]),
    row(0.1, Family::DoubleExponential, EstimatorId::Omed, [-0.025370, -0.011321, 8.434326, 0.854891]),
    row(0.1, Family::DoubleExponential, EstimatorId::Tmed, [-0.020137, -0.009642, 8.564605, 0.873420]),
    row(0.1, Family::DoubleExponential, EstimatorId::Qmed, [-0.031408, -0.003320, 10.250833, 1.052323]),
    row(0.1, Family::Pearson2, EstimatorId::Smed, [-0.008639, -0.002740, 0.204793, 0.021491]),
    row(0.1, Family::Pearson2, EstimatorId::Omed, [-0.006975, -0.002715, 0.197094, 0.019512]),
    row(0.1, Family::Pearson2, EstimatorId::Tmed, [-0.006893, -0.002416, 0.201236, 0.019897]),
    row(0.1, Family::Pearson2, EstimatorId::Qmed, [-0.011107, -0.001635, 0.232204, 0.023828]),
    row(0.1, Family::Logistic, EstimatorId::Smed, [-0.008358, -0.006214, 1.175185, 0.120428]),
    row(0.1, Family::Logistic, EstimatorId::Omed, [-0.011263, -0.004974, 1.119404, 0.110270]),
    row(0.1, Family::Logistic, EstimatorId::Tmed, [-0.013367, -0.005026, 1.146522, 0.112307]),
    row(0.1, Family::Logistic, EstimatorId::Qmed, [-0.007513, -0.001273, 1.351009, 0.136288]),
    row(0.5, Family::Normal, EstimatorId::Smed, [0.011107, -0.007306, 1.274190, 0.639970]),
    row(0.5, Family::Normal, EstimatorId::Omed, [0.011333, -0.006804, 1.274619, 0.636957]),
    row(0.5, Family::Normal, EstimatorId::Tmed, [0.011808, -0.005540, 1.309882, 0.650354]),
    row(0.5, Family::Normal, EstimatorId::Qmed, [0.009552, -0.007997, 1.551297, 0.767945]),
    row(0.5, Family::DoubleExponential, EstimatorId::Smed, [-0.022503, -0.017123, 8.333408, 4.103622]),
    row(0.5, Family::DoubleExponential, EstimatorId::Omed, [-0.019896, -0.016413, 8.340335, 4.101557]),
    row(0.5, Family::DoubleExponential, EstimatorId::Tmed, [-0.018584, -0.020229, 8.551098, 4.201095]),
    row(0.5, Family::DoubleExponential, EstimatorId::Qmed, [-0.022966, -0.005561, 10.177384, 5.088397]),
    row(0.5, Family::Pearson2, EstimatorId::Smed, [-0.005249, -0.001641, 0.197165, 0.097735]),
    row(0.5, Family::Pearson2, EstimatorId::Omed, [-0.005218, -0.001727, 0.196625, 0.097539]),
    row(0.5, Family::Pearson2, EstimatorId::Tmed, [-0.005330, -0.002090, 0.200822, 0.099652]),
    row(0.5, Family::Pearson2, EstimatorId::Qmed, [-0.006836, -0.000873, 0.237224, 0.118714]),
    row(0.5, Family::Logistic, EstimatorId::Smed, [0.008670, 0.013723, 1.099552, 0.563826]),
    row(0.5, Family::Logistic, EstimatorId::Omed, [0.009137, 0.013315, 1.101891, 0.561546]),
    row(0.5, Family::Logistic, EstimatorId::Tmed, [0.006853, 0.015428, 1.125076, 0.573525]),
    row(0.5, Family::Logistic, EstimatorId::Qmed, [0.012909, 0.018256, 1.337041, 0.684311]),
    row(0.9, Family::Normal, EstimatorId::Smed, [0.010573, 0.002084, 1.284202, 1.157361]),
    row(0.9, Family::Normal, EstimatorId::Omed, [0.010942, 0.001677, 1.291926, 1.166358]),
    row(0.9, Family::Normal, EstimatorId::Tmed, [0.009962, 0.002722, 1.314541, 1.191291]),
    row(0.9, Family::Normal, EstimatorId::Qmed, [0.007804, 0.005679, 1.553846, 1.414504]),
    row(0.9, Family::DoubleExponential, EstimatorId::Smed, [0.036521, 0.070980, 8.360825, 7.417609]),
    row(0.9, Family::DoubleExponential, EstimatorId::Omed, [0.037581, 0.072080, 8.417271, 7.462682]),
    row(0.9, Family::DoubleExponential, EstimatorId::Tmed, [0.037717, 0.070611, 8.586432, 7.609654]),
    row(0.9, Family::DoubleExponential, EstimatorId::Qmed, [0.007530, 0.087122, 10.274479, 9.154238]),
    row(0.9, Family::Pearson2, EstimatorId::Smed, [-0.006974, -0.000672, 0.193231, 0.178529]),
    row(0.9, Family::Pearson2, EstimatorId::Omed, [-0.006773, -0.001132, 0.194627, 0.178877]),
    row(0.9, Family::Pearson2, EstimatorId::Tmed, [-0.006907, -0.001222, 0.198142, 0.183445]),
    row(0.9, Family::Pearson2, EstimatorId::Qmed, [-0.005604, -0.002042, 0.234378, 0.220361]),
    row(0.9, Family::Logistic, EstimatorId::Smed, [-0.003381, 0.003081, 1.078231, 0.982265]),
    row(0.9, Family::Logistic, EstimatorId::Omed, [-0.005205, 0.002348, 1.082106, 0.989597]),
    row(0.9, Family::Logistic, EstimatorId::Tmed, [-0.002501, 0.003175, 1.107970, 1.007464]),
    row(0.9, Family::Logistic, EstimatorId::Qmed, [-0.010836, -0.000977, 1.321225, 1.190672]),
];

pub fn published(lambda: f64, family: Family, estimator: EstimatorId) -> Option<&'static PublishedRow> {
    PUBLISHED
        .iter()
        .find(|r| r.lambda == lambda && r.family == family && r.estimator == estimator)
}
