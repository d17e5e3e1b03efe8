#pragma once

// Named analytic source fields selectable from configuration files.

#include <string>

#include <json.hpp>

#include "curlam/domain.hpp"

namespace curlam::builtins {

// Builds the builtin `name` with the given JSON parameter object (strictly
// validated; {} selects the defaults). Fields that depend on the wave number
// (the Beltrami families and the scalar plane wave) receive `lambda`.
//
//   constant           full constant field            {value?: [8 reals]}
//   gaussian-scalar    w0 = exp(-|x|^2/sigma^2)       {sigma?}
//   gaussian-vector    dir * exp(-|x|^2/sigma^2)      {sigma?, dir?: [3]}
//   bump-vector        dir * bump(|x|/radius)         {radius?, dir?: [3]}
//   trig-full          smooth trigonometric sample    {}
//   beltrami-shear     force-free shear               {axis?, phase?}
//   beltrami-plane-wave circular polarization         {k?: [3]}
//   plane-wave-scalar  w0 = exp(i lambda z)           {}
AnalyticField make(const std::string& name, const nlohmann::json& params,
                   cplx lambda);

}  // namespace curlam::builtins
