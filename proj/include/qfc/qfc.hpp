#pragma once

#include "qfc/error.hpp"
#include "qfc/rational.hpp"
#include "qfc/base_field.hpp"
#include "qfc/extension.hpp"
#include "qfc/real_quadratic.hpp"
#include "qfc/ideals.hpp"
#include "qfc/forms.hpp"
#include "qfc/correspondence.hpp"
