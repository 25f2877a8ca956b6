#pragma once

// Generated by tests/oracles/oracle.py; do not edit.

namespace oracle {

constexpr long double L_exp_e40_ratio = 0.9600921852215286239546411L;
constexpr long double L_q2 = 0.932722982976451453267312L;
constexpr long double L_third = 2.619479395698261112326154e-6L;
constexpr long double S_12 = 8.317766166719343713000011L;
constexpr long double S_2 = 1.217857142857142857142857L;
constexpr long double S_3 = 2.026033760848626168863026L;
constexpr long double S_4 = 2.76528476857236480737119L;
constexpr long double S_5 = 3.465262959734030953943859L;
constexpr long double S_8 = 5.545177442624193284877548L;
constexpr long double T_5 = 20.26694339217824861124551L;
constexpr long double U_06 = 14.23882932498750543386068L;
constexpr long double U_e800_times_q = 9.869604401089358618834491L;
constexpr long double U_half = 17.96740215432081688965365L;
constexpr long double U_third = 28.47765864997501086772135L;
constexpr long double acosh_2 = 1.316957896924816708625046L;
constexpr long double anno_0001 = 1.001646288152379630669397L;
constexpr long double anno_001 = 1.016585821893693089482921L;
constexpr long double asinh_1 = 0.8813735870195430252326093L;
constexpr long double asinh_2 = 1.443635475178810342493277L;
constexpr long double core_half = 28.47765864997501086772135L;
constexpr long double eta_1600_scaled = 2.0L;
constexpr long double eta_28478 = 1.309516177085082656873411e-6L;
constexpr long double eta_U_third = 1.309739697849130556163077e-6L;
constexpr long double eta_at_2asinh1 = 0.8813735870195430252326093L;
constexpr long double eta_fixed_point = 1.218755726872012463073607L;
constexpr long double eta_large_45 = 3.383795845230260722636175e-10L;
constexpr long double eta_mid_2 = 0.7719368329053047250706391L;
constexpr long double eta_small_1e5 = 12.89921982609220237225775L;
constexpr long double gap_ratio_explicit = 0.02244668911335578002244669L;
constexpr long double one_div_e_loglog_third = 0.03134927587223300539144478L;
constexpr long double pants_1 = 1.550894022423881407917801e-5L;
constexpr long double pants_2_ln = -4760.306143337899045947867L;
constexpr long double q2_recursive = 6.179789893310934986195216e-4L;
constexpr long double ratio_5 = 2.924300930070512696206666L;
constexpr long double witness_ratio_1 = 0.05191195560523196719973652L;
constexpr long double witness_ratio_2 = 0.4050848819453790348319378L;

}  // namespace oracle
