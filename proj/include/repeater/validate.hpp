#pragma once

#include <string>
#include <vector>

#include "repeater/types.hpp"

namespace qrep {

// Returns every violated invariant; an empty list means the inputs are valid.
std::vector<std::string> validate(const HardwareParams& params);
std::vector<std::string> validate(const HardwareParams& params, const ProtocolConfig& config,
                                  double L_tot);

// Throws InvalidInput carrying the violation list.
void require_valid(const HardwareParams& params, const ProtocolConfig& config, double L_tot);

}  // namespace qrep
