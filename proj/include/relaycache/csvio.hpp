#pragma once

#include <string>
#include <vector>

namespace relaycache {

// 12 significant digits, shortest form ("%.12g").
std::string fmt_g12(double v);

std::string csv_join(const std::vector<std::string>& cells);

}
