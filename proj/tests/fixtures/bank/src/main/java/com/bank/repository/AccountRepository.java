package com.bank.repository;

import com.bank.model.Account;

public class AccountRepository extends BaseRepository<Account> implements Repository<Account> {
    private static final String TABLE = "accounts";

    @Override
    protected long idOf(Account row) {
        return row.getId();
    }

    public RowMapper accountMapper() {
        return new RowMapper() {
            public Account map(Object[] values) {
                return new Account((Long) values[0], (String) values[1]);
            }
        };
    }

    interface RowMapper {
        Account map(Object[] values);
    }
}
