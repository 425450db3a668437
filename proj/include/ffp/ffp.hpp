#pragma once

#include "ffp/convolution.hpp"
#include "ffp/distributions.hpp"
#include "ffp/errors.hpp"
#include "ffp/io.hpp"
#include "ffp/matrix_lab.hpp"
#include "ffp/poly.hpp"
#include "ffp/roots.hpp"
#include "ffp/scalar.hpp"
#include "ffp/series.hpp"
#include "ffp/transforms.hpp"
#include "ffp/u_transform.hpp"
