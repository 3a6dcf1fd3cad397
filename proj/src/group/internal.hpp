#pragma once

#include <span>
#include <vector>

#include "gnk/group.hpp"

namespace gnk::detail {

std::vector<Generator> normal_form_letters(std::span<const Generator> letters, int k);

}  // namespace gnk::detail
