#pragma once

// Expected values computed independently (Python, double precision) from the
// closed-form weighting rules and frozen here.

#include <array>

namespace tables {

struct AdaptiveCase {
  double s_det;
  int n_lost;
  int n_max;
  double th_det;
  double expected;
};

inline constexpr std::array<AdaptiveCase, 22> kAdaptive = {{
    {0.9, 0, 30, 0.6, 0.66666666666666663},
    {0.6, 0, 30, 0.6, 1.4918246976412703},
    {0.5, 30, 30, 0.6, 1.2840254166877414},
    {1.0, 0, 30, 0.6, 0.59999999999999998},
    {0.0, 0, 30, 0.6, 2.7182818284590451},
    {0.0, 30, 30, 0.6, 1.6487212707001282},
    {0.3, 0, 30, 0.6, 2.0137527074704766},
    {0.3, 15, 30, 0.6, 2.0137527074704766},
    {0.3, 16, 30, 0.6, 1.9673090936027973},
    {0.3, 20, 30, 0.6, 1.7920018256557557},
    {0.3, 30, 30, 0.6, 1.4190675485932573},
    {0.1, 24, 30, 0.6, 1.8776105792643432},
    {0.45, 5, 30, 0.6, 1.7332530178673953},
    {0.59, 29, 30, 0.6, 1.2444164020782451},
    {0.61, 30, 30, 0.6, 0.98360655737704916},
    {0.75, 10, 30, 0.6, 0.79999999999999993},
    {0.8, 0, 30, 0.6, 0.74999999999999989},
    {0.95, 3, 30, 0.6, 0.63157894736842102},
    {0.5, 0, 10, 0.5, 1.6487212707001282},
    {0.51, 0, 10, 0.5, 0.98039215686274506},
    {0.2, 8, 10, 0.5, 1.7506725002961012},
    {0.7, 12, 20, 0.8, 1.3099644507332475},
}};

struct DaCase {
  double s_det;
  double expected;
};

// c = 0.95, th_det = 0.6
inline constexpr std::array<DaCase, 20> kDa = {{
    {1.0, 0.94999999999999996},  {0.6, 1.0},
    {0.8, 0.97499999999999998},  {0.0, 1.0},
    {0.3, 1.0},                  {0.59, 1.0},
    {0.61, 0.99875000000000003}, {0.65, 0.99375000000000002},
    {0.7, 0.98750000000000004},  {0.75, 0.98124999999999996},
    {0.85, 0.96875},             {0.9, 0.96249999999999991},
    {0.95, 0.95624999999999993}, {0.99, 0.95124999999999993},
    {0.64, 0.995},               {0.72, 0.98499999999999999},
    {0.88, 0.96499999999999997}, {0.93, 0.95874999999999999},
    {0.97, 0.95374999999999999}, {0.62, 0.99750000000000005},
}};

struct SdaCase {
  double s_cls;
  double s_loc;
  double expected;
};

// c = 0.95, th_cls = 0.75, th_loc = 0.55
inline constexpr std::array<SdaCase, 20> kSda = {{
    {1.0, 1.0, 0.94999999999999996},    {0.75, 0.55, 1.0},
    {0.875, 0.775, 0.97499999999999998}, {0.0, 0.0, 1.0},
    {0.5, 0.9, 0.99222222222222223},    {0.9, 0.5, 0.97599999999999998},
    {0.8, 0.6, 0.99088888888888893},    {0.95, 0.95, 0.95911111111111103},
    {0.76, 0.56, 0.99817777777777772},  {0.85, 0.7, 0.98066666666666669},
    {1.0, 0.55, 0.95999999999999996},   {0.75, 1.0, 0.98999999999999999},
    {0.6, 0.6, 0.99888888888888894},    {0.99, 0.8, 0.95604444444444447},
    {0.8, 0.99, 0.98222222222222222},   {0.9, 0.9, 0.96822222222222221},
    {0.78, 0.9, 0.9874222222222222},    {0.97, 0.6, 0.96368888888888893},
    {0.82, 0.65, 0.98657777777777778},  {0.88, 0.58, 0.97853333333333326},
}};

}  // namespace tables
