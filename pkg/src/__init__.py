# Lebesgue constants of the Walsh system and van der Corput discrepancy
