#pragma once

#include "orlicz/error.hpp"
#include "orlicz/numerics.hpp"
#include "orlicz/young.hpp"
#include "orlicz/tail.hpp"
#include "orlicz/norms.hpp"
#include "orlicz/embedding.hpp"
#include "orlicz/exp_family.hpp"
#include "orlicz/io.hpp"
#include "orlicz/verify.hpp"
