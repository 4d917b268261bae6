# prasymp: recurrence polynomials and their Plancherel-Rotach asymptotics
