#ifndef CKY_STATE_HPP
#define CKY_STATE_HPP

#include <string>

namespace cky {

enum class Chart { NearField, FarField, Infinity };

std::string to_string(Chart c);

// A profile sample in one chart: (U, W, Theta) at xi, (U^, W^, Theta^) at eta,
// or (U~, W~, Theta~) at zeta.
struct ProfileState {
    Chart chart = Chart::NearField;
    double position = 0;
    double U = 0;
    double W = 0;
    double Theta = 0;
};

} // namespace cky

#endif
