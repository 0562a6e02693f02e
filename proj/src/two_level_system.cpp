#include "rabsorb/two_level_system.hpp"

#include "rabsorb/errors.hpp"
#include "rabsorb/units.hpp"

namespace rabsorb {

TwoLevelSystem TwoLevelSystem::from_gap(double eps_ba, double z_ba) {
    if (eps_ba <= 0.0) throw config_error("TwoLevelSystem: eps_ba must be positive");
    if (z_ba == 0.0) throw config_error("TwoLevelSystem: z_ba must be nonzero");
    return {-0.5 * eps_ba, 0.5 * eps_ba, z_ba};
}

TwoLevelSystem TwoLevelSystem::hydrogen_1s2p() {
    return from_gap(convert(10.2, Quantity::Energy, Direction::ToAu), 0.745);
}

}  // namespace rabsorb
