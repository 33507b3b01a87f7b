package com.bank.controller;

import com.bank.model.Account;
import com.bank.repository.AccountRepository;
import java.math.BigDecimal;

@RestController
public class AccountController {
    private final AccountRepository accounts;

    public AccountController(AccountRepository accounts) {
        this.accounts = accounts;
    }

    public void store(Account account) {
        accounts.findAll().add(account);
    }

    public void update(long id, String owner) {
        Account account = accounts.findById(id).orElseThrow();
        log("update " + account.getId());
    }

    public synchronized void deposit(long id, BigDecimal amount) {
        if (amount.signum() <= 0) {
            throw new IllegalArgumentException("amount");
        }
        log("deposit " + id);
    }

    public synchronized void withdraw(long id, BigDecimal amount) {
        try {
            log("withdraw " + id);
        } catch (RuntimeException e) {
            log(e.getMessage());
        }
    }

    public Account show(long id) {
        return accounts.findById(id).orElse(null);
    }

    private void log(String message) {
        System.out.println(message);
    }
}
